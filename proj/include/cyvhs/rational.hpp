#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cyvhs {

// Exact rational in lowest terms with positive denominator.
// Values that fit in int64 stay inline; anything larger lives in an mpq_class.
// The representation is canonical: big_ is engaged iff the value does not fit.
class Rational {
public:
    Rational() noexcept = default;
    Rational(long long v) : num_(v) {
        if (v == INT64_MIN) set_i128(v, 1);
    }
    Rational(long v) : Rational(static_cast<long long>(v)) {}
    Rational(int v) noexcept : num_(v) {}
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q) { set_big(mpq_class(q)); }

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    // Accepts "p", "-p", "p/q". Throws std::invalid_argument otherwise.
    static Rational parse(std::string_view s);

    bool is_zero() const noexcept { return !big_ && num_ == 0; }
    bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const noexcept;
    bool is_small() const noexcept { return !big_; }
    int sign() const noexcept;

    mpq_class to_mpq() const;
    std::string str() const;

    Rational operator-() const;
    Rational inverse() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    // Adds a*b into this, the hot loop of elimination.
    void add_mul(const Rational& a, const Rational& b);
    void sub_mul(const Rational& a, const Rational& b);

private:
    void set_i128(__int128 n, __int128 d);
    void set_big(mpq_class&& q);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace cyvhs
