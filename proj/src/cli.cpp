#include "priccati/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "priccati/error.hpp"
#include "priccati/expr.hpp"
#include "priccati/global_solver.hpp"
#include "priccati/irreducibility.hpp"
#include "priccati/ore.hpp"

namespace priccati::cli {

using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
public:
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string modulus_string(const FieldPtr& field)
{
    const auto& m = field->modulus();
    const auto fp = FiniteField::standard(field->characteristic(), 1);
    std::vector<FqElem> c;
    for (const auto v : m) {
        c.push_back(fp->from_int(static_cast<long long>(v)));
    }
    return Poly(fp, c).to_string("z");
}

json instance_json(const Instance& inst)
{
    json j;
    j["p"] = inst.spec.p;
    j["ext_degree"] = inst.field->degree();
    j["ext_modulus"] = modulus_string(inst.field);
    j["nstar"] = inst.curve->nstar().to_string();
    j["dx"] = inst.curve->dx();
    j["dy"] = inst.curve->dy();
    j["seed"] = inst.spec.seed;
    j["max_level"] = inst.spec.max_level;
    return j;
}

json places_json(const IrreducibilityReport& report)
{
    json arr = json::array();
    for (const auto& pl : report.places) {
        json j;
        j["center"] = pl.center;
        j["e"] = pl.ram_index;
        j["f"] = pl.relative_degree;
        j["eta"] = pl.eta;
        j["tested"] = pl.tested;
        j["solvable"] = pl.solvable;
        if (!pl.note.empty()) {
            j["note"] = pl.note;
        }
        arr.push_back(j);
    }
    return arr;
}

json ratfunc_json(const RatFunc& r)
{
    return json{{"num", r.num().to_string()}, {"den", r.den().to_string()}};
}

int operator_degree(const OrePoly<RatFunc>& l)
{
    int d = 0;
    for (const auto& c : l.coeffs()) {
        d = std::max(d, c.height());
    }
    return d;
}

bool factor_divides(const OrePoly<RatFunc>& l, const CurvePtr& curve)
{
    if (l.is_zero()) {
        return false;
    }
    return right_divmod(nstar_p_operator(curve), l).second.is_zero();
}

json solution_json(const FFElem& f)
{
    json coords = json::array();
    for (int i = 0; i < f.curve()->dy(); ++i) {
        coords.push_back(ratfunc_json(f.coord(static_cast<std::size_t>(i))));
    }
    json j;
    j["solution"] = f.to_string();
    j["coordinates"] = coords;
    j["verified"] = is_solution(f);
    j["degree"] = f.coefficient_degree();
    return j;
}

json factor_json(const OrePoly<RatFunc>& l, const CurvePtr& curve)
{
    json coeffs = json::array();
    std::string joined;
    for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
        coeffs.push_back(l.coeffs()[i].to_string());
        joined += (i == 0 ? "" : "; ") + l.coeffs()[i].to_string();
    }
    json j;
    j["factor"] = l.to_string();
    j["coefficients"] = coeffs;
    j["coefficients_text"] = joined;
    j["order"] = l.order();
    j["verified"] = factor_divides(l, curve);
    j["degree"] = operator_degree(l);
    return j;
}

struct Options {
    InstanceSpec spec;
    bool json_out = false;
    bool verbose = false;
    std::string solution;
    std::string factor;
    std::string from_json;
};

class Runner {
public:
    Runner(const Options& opts, std::ostream& out, std::istream& in) : opts_(opts), out_(out), in_(in) {}

    int irreducible()
    {
        const Instance inst = build_instance(opts_.spec);
        Stopwatch sw;
        const auto report = is_reducible(inst.curve);
        timings_["irreducibility_ms"] = sw.elapsed_ms();
        json doc = document(inst, to_string(report.verdict), nullptr, report);
        if (opts_.json_out) {
            emit(doc);
            return kSuccess;
        }
        out_ << header(inst) << "verdict: " << to_string(report.verdict) << '\n';
        print_places(report);
        print_timings();
        return kSuccess;
    }

    int solve()
    {
        const Instance inst = build_instance(opts_.spec);
        Stopwatch sw;
        const auto outcome = solve_priccati_detailed(inst.curve, options(inst));
        timings_["solve_ms"] = sw.elapsed_ms();
        json witness = nullptr;
        if (outcome.solution) {
            witness = solution_json(*outcome.solution);
            witness["level"] = outcome.level;
            witness["B"] = outcome.B;
            witness["delta"] = outcome.delta.to_string();
            witness["precision"] = outcome.precision;
            witness["good_center"] = outcome.good_center;
        }
        const json doc = document(inst, to_string(outcome.report.verdict), witness, outcome.report);
        if (opts_.json_out) {
            emit(doc);
            return kSuccess;
        }
        out_ << header(inst) << "verdict: " << to_string(outcome.report.verdict) << '\n';
        if (!outcome.solution) {
            out_ << "no solution (irreducible)\n";
        } else {
            const auto& f = *outcome.solution;
            out_ << "solution: " << f.to_string() << '\n';
            for (int i = 0; i < inst.curve->dy(); ++i) {
                const auto& c = f.coord(static_cast<std::size_t>(i));
                out_ << "  coordinate a^" << i << ": num = " << c.num().to_string() << ", den = " << c.den().to_string()
                     << " (degrees " << c.num().degree() << ", " << c.den().degree() << ")\n";
            }
            out_ << "verified: " << (witness["verified"].get<bool>() ? "yes" : "no") << '\n';
            out_ << "coefficient degree: " << witness["degree"].get<int>() << '\n';
            out_ << "level: " << outcome.level << ", B = " << outcome.B << ", delta = " << outcome.delta.to_string()
                 << ", good center = " << outcome.good_center << '\n';
        }
        print_timings();
        return kSuccess;
    }

    int factor()
    {
        const Instance inst = build_instance(opts_.spec);
        Stopwatch sw;
        const auto outcome = solve_priccati_detailed(inst.curve, options(inst));
        timings_["solve_ms"] = sw.elapsed_ms();
        json witness = nullptr;
        std::optional<OrePoly<RatFunc>> l;
        if (outcome.solution) {
            Stopwatch fw;
            l = reconstruct_factor(inst.curve, *outcome.solution);
            witness = factor_json(*l, inst.curve);
            witness["from_solution"] = outcome.solution->to_string();
            timings_["factor_ms"] = fw.elapsed_ms();
        }
        const json doc = document(inst, to_string(outcome.report.verdict), witness, outcome.report);
        if (opts_.json_out) {
            emit(doc);
            return kSuccess;
        }
        out_ << header(inst) << "verdict: " << to_string(outcome.report.verdict) << '\n';
        if (!l) {
            out_ << "irreducible; no factor\n";
        } else {
            out_ << "factor: " << l->to_string() << '\n';
            out_ << "coefficients: " << witness["coefficients_text"].get<std::string>() << '\n';
            out_ << "order: " << l->order() << '\n';
            out_ << "right-divides N_*^p(D): " << (witness["verified"].get<bool>() ? "yes" : "no") << '\n';
            out_ << "coefficient degree: " << witness["degree"].get<int>() << '\n';
        }
        print_timings();
        return kSuccess;
    }

    int verify()
    {
        Options opts = opts_;
        if (!opts.from_json.empty()) {
            load_json(opts);
        }
        const int given = static_cast<int>(!opts.solution.empty()) + static_cast<int>(!opts.factor.empty());
        if (given != 1) {
            throw InputError("verify needs exactly one of --solution, --factor or a witness in --from-json");
        }
        const Instance inst = build_instance(opts.spec);
        Stopwatch sw;
        bool valid = false;
        json witness;
        if (!opts.solution.empty()) {
            const FFElem f = parse_ffelem(opts.solution, inst.curve);
            valid = is_solution(f);
            witness = json{{"solution", f.to_string()}, {"valid", valid}};
        } else {
            const OrePoly<RatFunc> l = parse_factor(opts.factor, inst.field);
            valid = factor_divides(l, inst.curve);
            witness = json{{"factor", l.to_string()}, {"order", l.order()}, {"valid", valid}};
        }
        timings_["verify_ms"] = sw.elapsed_ms();
        json doc;
        doc["instance"] = instance_json(inst);
        doc["verdict"] = valid ? "valid" : "invalid";
        doc["witness"] = witness;
        doc["places"] = json::array();
        doc["timings"] = timings_json();
        if (opts_.json_out) {
            emit(doc);
        } else {
            out_ << header(inst) << (opts.solution.empty() ? "factor " : "solution ") << (valid ? "valid" : "invalid")
                 << '\n';
            print_timings();
        }
        return valid ? kSuccess : kInputError;
    }

private:
    SolveOptions options(const Instance& inst) const
    {
        SolveOptions o;
        o.max_level = inst.spec.max_level;
        return o;
    }

    static OrePoly<RatFunc> parse_factor(const std::string& text, const FieldPtr& field)
    {
        std::vector<RatFunc> coeffs;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            coeffs.push_back(parse_ratfunc(item, field));
        }
        if (coeffs.empty()) {
            throw InputError("empty factor");
        }
        return OrePoly<RatFunc>(RatFunc(field), std::move(coeffs));
    }

    void load_json(Options& opts)
    {
        json doc;
        try {
            if (opts.from_json == "-") {
                doc = json::parse(in_);
            } else {
                std::ifstream file(opts.from_json);
                if (!file) {
                    throw InputError("cannot open " + opts.from_json);
                }
                doc = json::parse(file);
            }
        } catch (const json::exception& e) {
            throw InputError(std::string("malformed JSON witness: ") + e.what());
        }
        try {
            const auto& inst = doc.at("instance");
            opts.spec.p = inst.at("p").get<std::uint64_t>();
            opts.spec.ext_degree = inst.at("ext_degree").get<unsigned>();
            opts.spec.ext_modulus = inst.at("ext_modulus").get<std::string>();
            opts.spec.nstar = inst.at("nstar").get<std::string>();
            opts.spec.seed = inst.value("seed", std::uint64_t{0});
            const auto& w = doc.at("witness");
            if (w.is_null()) {
                throw InputError("the JSON document carries no witness");
            }
            if (w.contains("coefficients_text")) {
                opts.factor = w.at("coefficients_text").get<std::string>();
            } else {
                opts.solution = w.at("solution").get<std::string>();
            }
        } catch (const json::exception& e) {
            throw InputError(std::string("JSON witness lacks a field: ") + e.what());
        }
    }

    json document(const Instance& inst, const std::string& verdict, json witness, const IrreducibilityReport& report) const
    {
        json doc;
        doc["instance"] = instance_json(inst);
        doc["verdict"] = verdict;
        doc["witness"] = std::move(witness);
        doc["places"] = places_json(report);
        doc["timings"] = timings_json();
        return doc;
    }

    json timings_json() const
    {
        json t = json::object();
        if (opts_.verbose) {
            for (const auto& [k, v] : timings_) {
                t[k] = v;
            }
        }
        return t;
    }

    void emit(const json& doc) { out_ << doc.dump(2) << '\n'; }

    static std::string header(const Instance& inst)
    {
        std::ostringstream os;
        os << "instance: F_" << inst.field->order() << " (p = " << inst.spec.p << "), N_* = " << inst.curve->nstar().to_string()
           << " (d_x = " << inst.curve->dx() << ", d_y = " << inst.curve->dy() << ")\n";
        return os.str();
    }

    void print_places(const IrreducibilityReport& report)
    {
        out_ << "places:\n";
        out_ << "  " << std::left << std::setw(24) << "center" << std::setw(4) << "e" << std::setw(4) << "f" << std::setw(6)
             << "eta" << "local\n";
        for (const auto& pl : report.places) {
            std::string local = !pl.tested ? "not tested" : (pl.solvable ? "solvable" : "unsolvable");
            if (!pl.note.empty()) {
                local += " (" + pl.note + ")";
            }
            out_ << "  " << std::left << std::setw(24) << pl.center << std::setw(4) << pl.ram_index << std::setw(4)
                 << pl.relative_degree << std::setw(6) << pl.eta << local << '\n';
        }
    }

    void print_timings()
    {
        if (!opts_.verbose) {
            return;
        }
        for (const auto& [k, v] : timings_) {
            out_ << "time " << k << ": " << std::fixed << std::setprecision(2) << v << '\n';
        }
    }

    Options opts_;
    std::ostream& out_;
    std::istream& in_;
    std::map<std::string, double> timings_;
};

} // namespace

Instance build_instance(const InstanceSpec& spec)
{
    if (!FiniteField::is_prime(spec.p)) {
        throw InputError("p = " + std::to_string(spec.p) + " is not prime");
    }
    if (spec.nstar.empty()) {
        throw InputError("--nstar is required");
    }
    Instance inst;
    inst.spec = spec;
    if (spec.ext_modulus) {
        const auto m = to_fp_poly(parse_expression(*spec.ext_modulus), spec.p);
        if (m.size() < 2) {
            throw InputError("the extension modulus must have positive degree");
        }
        if (spec.ext_degree != 1 && spec.ext_degree != m.size() - 1) {
            throw InputError("--ext-degree disagrees with the degree of --ext-modulus");
        }
        inst.field = FiniteField::with_modulus(spec.p, m);
    } else {
        if (spec.ext_degree < 1) {
            throw InputError("--ext-degree must be positive");
        }
        inst.field = FiniteField::standard(spec.p, spec.ext_degree);
    }
    inst.spec.ext_degree = inst.field->degree();
    inst.curve = CurveField::create(parse_bivpoly(spec.nstar, inst.field), spec.seed);
    return inst;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Solve p-Riccati equations and factor central differential operators over F_q(x)"};
    app.name("priccati_cli");
    app.require_subcommand(1);
    Options opts;
    std::string ext_modulus;
    auto add_instance = [&](CLI::App* sub) {
        sub->add_option("--p", opts.spec.p, "Characteristic");
        sub->add_option("--ext-degree", opts.spec.ext_degree, "Degree b of F_q over F_p")->capture_default_str();
        sub->add_option("--ext-modulus", ext_modulus, "Modulus of F_q as a polynomial in z");
        sub->add_option("--nstar", opts.spec.nstar, "N_*(x, Y), irreducible over F_q(x)");
        sub->add_option("--seed", opts.spec.seed, "Seed for randomized choices")->capture_default_str();
        sub->add_option("--max-level", opts.spec.max_level, "Highest escalation level (negative: up to the cap)");
        sub->add_flag("--json", opts.json_out, "Emit a JSON report");
        sub->add_flag("--verbose", opts.verbose, "Report wall-clock timings");
    };
    auto* irr = app.add_subcommand("irreducible", "Decide irreducibility of N(D^p)");
    auto* sol = app.add_subcommand("solve", "Find a solution of the p-Riccati equation");
    auto* fac = app.add_subcommand("factor", "Compute an irreducible right factor of N(D^p)");
    auto* ver = app.add_subcommand("verify", "Check a solution or a factor");
    for (auto* s : {irr, sol, fac, ver}) {
        add_instance(s);
    }
    ver->add_option("--solution", opts.solution, "Candidate f in x, a and z");
    ver->add_option("--factor", opts.factor, "Coefficients c_0; c_1; ... of a candidate factor");
    ver->add_option("--from-json", opts.from_json, "JSON report from solve or factor ('-' for stdin)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    if (!ext_modulus.empty()) {
        opts.spec.ext_modulus = ext_modulus;
    }

    try {
        Runner runner(opts, out, in);
        if (irr->parsed()) {
            return runner.irreducible();
        }
        if (sol->parsed()) {
            return runner.solve();
        }
        if (fac->parsed()) {
            return runner.factor();
        }
        return runner.verify();
    } catch (const UnsupportedError& e) {
        err << "unsupported instance: " << e.what() << '\n';
        return kUnsupported;
    } catch (const IncompleteSearchError& e) {
        err << "incomplete search: " << e.what() << '\n';
        return kIncomplete;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace priccati::cli
