#include "priccati/finite_field.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "priccati/error.hpp"
#include "priccati/matrix_fp.hpp"

namespace priccati {

namespace {

using Digits = std::vector<std::uint64_t>;

constexpr std::uint64_t kMaxPrime = (1ULL << 31U);
constexpr std::uint64_t kMaxOrder = (1ULL << 62U);
constexpr std::uint64_t kTableLimit = (1ULL << 20U);

// Small helpers for polynomials over F_p stored lowest coefficient first,
// used to validate moduli before a field exists.
void trim(Digits& a)
{
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    std::uint64_t r = 1;
    std::uint64_t e = p - 2;
    a %= p;
    while (e != 0) {
        if (e & 1U) {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1U;
    }
    return r;
}

Digits fp_mod(Digits a, const Digits& m, std::uint64_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t linv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const std::uint64_t c = a.back() * linv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        }
        trim(a);
    }
    return a;
}

Digits fp_mulmod(const Digits& a, const Digits& b, const Digits& m, std::uint64_t p)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    Digits r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
    }
    return fp_mod(std::move(r), m, p);
}

Digits fp_gcd(Digits a, Digits b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Digits r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Digits fp_powmod(Digits base, std::uint64_t e, const Digits& m, std::uint64_t p)
{
    Digits r{1};
    base = fp_mod(std::move(base), m, p);
    while (e != 0) {
        if (e & 1U) {
            r = fp_mulmod(r, base, m, p);
        }
        base = fp_mulmod(base, base, m, p);
        e >>= 1U;
    }
    return r;
}

// Irreducibility over F_p by checking gcd(x^{p^i} - x, m) = 1 for i <= n/2.
bool fp_is_irreducible(const Digits& m, std::uint64_t p)
{
    const std::size_t n = m.size() - 1;
    if (n == 1) {
        return true;
    }
    Digits h{0, 1};
    for (std::size_t i = 1; i <= n / 2; ++i) {
        h = fp_powmod(h, p, m, p);
        Digits d = h;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        const Digits g = fp_gcd(m, d, p);
        if (g.size() > 1) {
            return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

} // namespace

bool FiniteField::is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> FiniteField::first_irreducible(std::uint64_t p, unsigned n)
{
    if (!is_prime(p) || p >= kMaxPrime) {
        throw InputError("characteristic must be a prime below 2^31, got " + std::to_string(p));
    }
    if (n == 0) {
        throw InputError("extension degree must be at least 1");
    }
    if (n == 1) {
        return {0, 1};
    }
    for (std::uint64_t idx = 0;; ++idx) {
        Digits m(n + 1, 0);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < n; ++i) {
            m[i] = v % p;
            v /= p;
        }
        if (v != 0) {
            break;
        }
        m[n] = 1;
        if (m[0] != 0 && fp_is_irreducible(m, p)) {
            return m;
        }
    }
    throw Error("no irreducible polynomial found");
}

FiniteField::FiniteField(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), n_(0), q_(1), modulus_(std::move(modulus))
{
    if (!is_prime(p) || p >= kMaxPrime) {
        throw InputError("characteristic must be a prime below 2^31, got " + std::to_string(p));
    }
    for (auto& c : modulus_) {
        c %= p;
    }
    trim(modulus_);
    if (modulus_.size() < 2 || modulus_.back() != 1) {
        throw InputError("field modulus must be monic of degree at least 1");
    }
    n_ = static_cast<unsigned>(modulus_.size() - 1);
    for (unsigned i = 0; i < n_; ++i) {
        if (q_ > kMaxOrder / p_) {
            throw InputError("field order exceeds 2^62");
        }
        q_ *= p_;
    }
    if (!fp_is_irreducible(modulus_, p_)) {
        throw InputError("field modulus is not irreducible over F_" + std::to_string(p_));
    }
    powp_.resize(n_);
    std::uint64_t pw = 1;
    for (unsigned i = 0; i < n_; ++i) {
        powp_[i] = pw;
        pw *= p_;
    }
    if (n_ > 1 && q_ <= kTableLimit) {
        build_tables();
    }
}

FieldPtr FiniteField::prime(std::uint64_t p)
{
    return standard(p, 1);
}

FieldPtr FiniteField::with_modulus(std::uint64_t p, const std::vector<std::uint64_t>& modulus)
{
    auto f = std::make_shared<const FiniteField>(p, modulus);
    const FieldPtr std_field = standard(p, f->degree());
    if (std_field->same_as(*f)) {
        return std_field;
    }
    return f;
}

FieldPtr FiniteField::standard(std::uint64_t p, unsigned n)
{
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, unsigned>, FieldPtr> cache;
    const std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    auto f = std::make_shared<const FiniteField>(p, first_irreducible(p, n));
    cache.emplace(key, f);
    return f;
}

void FiniteField::build_tables()
{
    const FqElem g = primitive_element();
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    FqElem cur = one();
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
        exp_[i] = static_cast<std::uint32_t>(cur.rep);
        log_[cur.rep] = static_cast<std::uint32_t>(i);
        cur = slow_mul(cur, g);
    }
}

FqElem FiniteField::primitive_element() const
{
    if (q_ == 2) {
        return one();
    }
    const auto factors = prime_factors(q_ - 1);
    for (std::uint64_t cand = 1; cand < q_; ++cand) {
        bool ok = true;
        for (const auto r : factors) {
            FqElem base{cand};
            FqElem acc = one();
            std::uint64_t e = (q_ - 1) / r;
            while (e != 0) {
                if (e & 1U) {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1U;
            }
            if (acc == one()) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return {cand};
        }
    }
    throw Error("no primitive element found");
}

FqElem FiniteField::from_int(std::int64_t v) const
{
    const auto sp = static_cast<std::int64_t>(p_);
    std::int64_t r = v % sp;
    if (r < 0) {
        r += sp;
    }
    return {static_cast<std::uint64_t>(r)};
}

FqElem FiniteField::generator() const
{
    if (n_ == 1) {
        return from_int(-static_cast<std::int64_t>(modulus_[0]));
    }
    return {p_};
}

FqElem FiniteField::add(FqElem a, FqElem b) const
{
    if (n_ == 1) {
        const std::uint64_t s = a.rep + b.rep;
        return {s >= p_ ? s - p_ : s};
    }
    if (p_ == 2) {
        return {a.rep ^ b.rep};
    }
    std::uint64_t r = 0;
    std::uint64_t x = a.rep;
    std::uint64_t y = b.rep;
    for (unsigned i = 0; i < n_ && (x != 0 || y != 0); ++i) {
        std::uint64_t d = x % p_ + y % p_;
        if (d >= p_) {
            d -= p_;
        }
        r += d * powp_[i];
        x /= p_;
        y /= p_;
    }
    return {r};
}

FqElem FiniteField::neg(FqElem a) const
{
    if (n_ == 1) {
        return {a.rep == 0 ? 0 : p_ - a.rep};
    }
    if (p_ == 2) {
        return a;
    }
    std::uint64_t r = 0;
    std::uint64_t x = a.rep;
    for (unsigned i = 0; i < n_ && x != 0; ++i) {
        const std::uint64_t d = x % p_;
        r += (d == 0 ? 0 : p_ - d) * powp_[i];
        x /= p_;
    }
    return {r};
}

FqElem FiniteField::sub(FqElem a, FqElem b) const
{
    if (n_ == 1) {
        return {a.rep >= b.rep ? a.rep - b.rep : a.rep + p_ - b.rep};
    }
    return add(a, neg(b));
}

FqElem FiniteField::slow_mul(FqElem a, FqElem b) const
{
    const Digits da = coords(a);
    const Digits db = coords(b);
    Digits r(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
        if (da[i] == 0) {
            continue;
        }
        for (unsigned j = 0; j < n_; ++j) {
            r[i + j] = (r[i + j] + da[i] * db[j]) % p_;
        }
    }
    for (std::size_t k = r.size(); k-- > n_;) {
        const std::uint64_t c = r[k];
        if (c == 0) {
            continue;
        }
        const std::size_t shift = k - n_;
        for (unsigned i = 0; i <= n_; ++i) {
            r[shift + i] = (r[shift + i] + (p_ - c) * modulus_[i]) % p_;
        }
    }
    r.resize(n_);
    return from_coords(r);
}

FqElem FiniteField::mul(FqElem a, FqElem b) const
{
    if (a.rep == 0 || b.rep == 0) {
        return zero();
    }
    if (n_ == 1) {
        return {a.rep * b.rep % p_};
    }
    if (!exp_.empty()) {
        std::uint64_t e = static_cast<std::uint64_t>(log_[a.rep]) + log_[b.rep];
        if (e >= q_ - 1) {
            e -= q_ - 1;
        }
        return {exp_[e]};
    }
    return slow_mul(a, b);
}

FqElem FiniteField::pow(FqElem a, std::uint64_t e) const
{
    FqElem r = one();
    while (e != 0) {
        if (e & 1U) {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1U;
    }
    return r;
}

FqElem FiniteField::inv(FqElem a) const
{
    if (a.rep == 0) {
        throw InputError("division by zero in F_" + std::to_string(q_));
    }
    if (n_ == 1) {
        return {inv_mod(a.rep, p_)};
    }
    if (!exp_.empty()) {
        const std::uint64_t l = log_[a.rep];
        return {exp_[l == 0 ? 0 : q_ - 1 - l]};
    }
    return pow(a, q_ - 2);
}

FqElem FiniteField::div(FqElem a, FqElem b) const
{
    return mul(a, inv(b));
}

FqElem FiniteField::frobenius(FqElem a) const
{
    if (n_ == 1) {
        return a;
    }
    return pow(a, p_);
}

FqElem FiniteField::frobenius_root(FqElem a) const
{
    if (n_ == 1) {
        return a;
    }
    return pow(a, q_ / p_);
}

std::uint64_t FiniteField::trace(FqElem a) const
{
    FqElem acc = zero();
    FqElem cur = a;
    for (unsigned i = 0; i < n_; ++i) {
        acc = add(acc, cur);
        cur = frobenius(cur);
    }
    return acc.rep;
}

std::vector<std::uint64_t> FiniteField::coords(FqElem a) const
{
    Digits d(n_, 0);
    std::uint64_t x = a.rep;
    for (unsigned i = 0; i < n_; ++i) {
        d[i] = x % p_;
        x /= p_;
    }
    return d;
}

FqElem FiniteField::from_coords(std::span<const std::uint64_t> c) const
{
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < c.size() && i < n_; ++i) {
        r += (c[i] % p_) * powp_[i];
    }
    return {r};
}

FqElem FiniteField::random(std::mt19937_64& rng) const
{
    std::uniform_int_distribution<std::uint64_t> dist(0, q_ - 1);
    return {dist(rng)};
}

std::string FiniteField::to_string(FqElem a, const std::string& var) const
{
    if (n_ == 1) {
        return std::to_string(a.rep);
    }
    const Digits d = coords(a);
    std::ostringstream os;
    bool first = true;
    for (unsigned i = n_; i-- > 0;) {
        if (d[i] == 0) {
            continue;
        }
        if (!first) {
            os << '+';
        }
        first = false;
        if (i == 0) {
            os << d[i];
            continue;
        }
        if (d[i] != 1) {
            os << d[i] << '*';
        }
        os << var;
        if (i > 1) {
            os << '^' << i;
        }
    }
    if (first) {
        return "0";
    }
    return os.str();
}

bool FiniteField::same_as(const FiniteField& other) const
{
    return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
}

Embedding::Embedding(FieldPtr from, FieldPtr to, FqElem image_of_generator)
    : from_(std::move(from)), to_(std::move(to))
{
    if (from_->characteristic() != to_->characteristic() || to_->degree() % from_->degree() != 0) {
        throw InputError("no embedding between fields of incompatible orders");
    }
    const unsigned n = from_->degree();
    basis_images_.resize(n);
    basis_images_[0] = to_->one();
    if (n == 1) {
        identity_ = from_->same_as(*to_);
        return;
    }
    for (unsigned i = 1; i < n; ++i) {
        basis_images_[i] = to_->mul(basis_images_[i - 1], image_of_generator);
    }
    // The image must be a root of the source modulus.
    FqElem acc = to_->zero();
    FqElem pw = to_->one();
    for (const auto c : from_->modulus()) {
        acc = to_->add(acc, to_->mul(to_->from_int(static_cast<std::int64_t>(c)), pw));
        pw = to_->mul(pw, image_of_generator);
    }
    if (!to_->is_zero(acc)) {
        throw InputError("embedding image is not a root of the source modulus");
    }
    identity_ = from_->same_as(*to_) && image_of_generator == from_->generator();
}

Embedding Embedding::identity(const FieldPtr& field)
{
    Embedding e;
    e.from_ = field;
    e.to_ = field;
    e.identity_ = true;
    e.basis_images_.resize(field->degree());
    FqElem pw = field->one();
    for (unsigned i = 0; i < field->degree(); ++i) {
        e.basis_images_[i] = pw;
        pw = field->mul(pw, field->generator());
    }
    return e;
}

FqElem Embedding::operator()(FqElem a) const
{
    if (identity_) {
        return a;
    }
    if (from_->degree() == 1) {
        return to_->from_int(static_cast<std::int64_t>(a.rep));
    }
    const auto c = from_->coords(a);
    FqElem r = to_->zero();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) {
            r = to_->add(r, to_->mul(to_->from_int(static_cast<std::int64_t>(c[i])), basis_images_[i]));
        }
    }
    return r;
}

std::optional<FqElem> Embedding::preimage(FqElem b) const
{
    if (identity_) {
        return b;
    }
    const std::uint64_t p = to_->characteristic();
    const unsigned n = from_->degree();
    const unsigned m = to_->degree();
    MatrixFp mat(p, m, n);
    for (unsigned j = 0; j < n; ++j) {
        const auto c = to_->coords(basis_images_[j]);
        for (unsigned i = 0; i < m; ++i) {
            mat.at(i, j) = c[i];
        }
    }
    const auto rhs = to_->coords(b);
    const auto sol = solve_fp(mat, rhs);
    if (!sol.solution) {
        return std::nullopt;
    }
    return from_->from_coords(*sol.solution);
}

Embedding Embedding::then(const Embedding& next) const
{
    if (!next.from_->same_as(*to_)) {
        throw InputError("embedding composition: field mismatch");
    }
    if (identity_) {
        return next;
    }
    if (next.identity_) {
        return *this;
    }
    return Embedding(from_, next.to_, next((*this)(from_->generator())));
}

} // namespace priccati
