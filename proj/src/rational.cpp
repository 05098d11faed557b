#include "cyvhs/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace cyvhs {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
        return std::gcd(std::uint64_t(a), std::uint64_t(b));
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(i128 v) { return v > kMin && v <= kMax; }

mpz_class mpz_from(i128 v) {
    u128 m = uabs(v);
    mpz_class hi(static_cast<unsigned long>(std::uint64_t(m >> 64)));
    mpz_class r = (hi << 64) + mpz_class(static_cast<unsigned long>(std::uint64_t(m)));
    return v < 0 ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    set_i128(n, d);
}

void Rational::set_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
        n /= i128(g);
        d /= i128(g);
    }
    if (fits(n) && d <= kMax) {
        num_ = std::int64_t(n);
        den_ = std::int64_t(d);
        big_.reset();
        return;
    }
    mpq_class q(mpz_from(n), mpz_from(d));
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
}

void Rational::set_big(mpq_class&& q) {
    q.canonicalize();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != kMin) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
        return;
    }
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view s) {
    std::size_t i = 0;
    auto digits = [&] {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return i > start;
    };
    if (i < s.size() && s[i] == '-') ++i;
    bool ok = digits();
    if (ok && i < s.size() && s[i] == '/') {
        ++i;
        ok = digits();
    }
    if (!ok || i != s.size()) throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    mpq_class q;
    if (q.set_str(std::string(s), 10) != 0) throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    Rational r;
    r.set_big(std::move(q));
    return r;
}

bool Rational::is_integer() const noexcept {
    return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const noexcept {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    Rational r;
    if (big_) r.set_big(mpq_class(-*big_));
    else {
        r.num_ = -num_;
        r.den_ = den_;
    }
    return r;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Rational r;
    if (big_) r.set_big(mpq_class(1 / *big_));
    else r.set_i128(den_, num_);
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (o.num_ == 0) return *this;
        if (den_ == 1 && o.den_ == 1) {
            long long r;
            if (!__builtin_add_overflow(num_, o.num_, &r) && r != kMin) {
                num_ = r;
                return *this;
            }
            set_i128(i128(num_) + o.num_, 1);
            return *this;
        }
        if (den_ == o.den_) {
            set_i128(i128(num_) + o.num_, den_);
            return *this;
        }
        std::int64_t g = std::gcd(den_, o.den_);
        i128 n = i128(num_) * (o.den_ / g) + i128(o.num_) * (den_ / g);
        set_i128(n, i128(den_) * (o.den_ / g));
        return *this;
    }
    set_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (!o.big_ && o.num_ != kMin) {
        Rational neg;
        neg.num_ = -o.num_;
        neg.den_ = o.den_;
        return *this += neg;
    }
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
        if (num_ == 0) return *this;
        if (o.num_ == 0) {
            num_ = 0;
            den_ = 1;
            return *this;
        }
        if (den_ == 1 && o.den_ == 1) {
            long long r;
            if (!__builtin_mul_overflow(num_, o.num_, &r) && r != kMin) {
                num_ = r;
                return *this;
            }
            set_i128(i128(num_) * o.num_, 1);
            return *this;
        }
        std::int64_t g1 = std::gcd(num_, o.den_);
        std::int64_t g2 = std::gcd(o.num_, den_);
        i128 n = i128(num_ / g1) * (o.num_ / g2);
        i128 d = i128(den_ / g2) * (o.den_ / g1);
        if (fits(n) && d <= kMax) {
            num_ = std::int64_t(n);
            den_ = std::int64_t(d);
        } else {
            set_i128(n, d);
        }
        return *this;
    }
    set_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    return *this *= o.inverse();
}

void Rational::add_mul(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
        long long p, r;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_add_overflow(num_, p, &r) && r != kMin) {
            num_ = r;
            return;
        }
    }
    *this += a * b;
}

void Rational::sub_mul(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
        long long p, r;
        if (!__builtin_mul_overflow(a.num_, b.num_, &p) && !__builtin_sub_overflow(num_, p, &r) && r != kMin) {
            num_ = r;
            return;
        }
    }
    *this -= a * b;
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = i128(a.num_) * b.den_;
        i128 r = i128(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace cyvhs
