/**
 * @file field.hpp
 * @brief Exact scalar fields: prime fields F_p and the rationals Q.
 *
 * A field is a small descriptor object. Elements are plain values
 * (`F::Scalar`) and every operation goes through the descriptor, so a
 * container only has to remember one descriptor for all of its entries.
 * Two descriptors compare equal iff they describe the same field; mixing
 * containers over different fields raises FieldMismatch.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hhs2 {

class FieldMismatch : public std::invalid_argument {
public:
    FieldMismatch() : std::invalid_argument("field mismatch") {}
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

/// Splits "a/b" into its two halves; a string without '/' has denominator "1".
inline std::pair<std::string, std::string> split_fraction(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return {std::string(text), "1"};
    return {std::string(text.substr(0, slash)), std::string(text.substr(slash + 1))};
}

inline std::int64_t parse_int(const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

}  // namespace detail

/// The prime field Z/pZ with canonical representatives in [0, p).
class PrimeField {
public:
    using Scalar = std::uint32_t;

    static constexpr std::uint32_t default_prime = 101;

    explicit PrimeField(std::uint32_t p = default_prime) : p_(p) {
        if (p >= (1u << 31) || !detail::is_prime(p))
            throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^31");
    }

    std::uint32_t characteristic() const { return p_; }
    std::string tag() const { return "F_" + std::to_string(p_); }

    Scalar zero() const { return 0; }
    Scalar one() const { return 1 % p_; }
    bool is_zero(Scalar a) const { return a == 0; }

    Scalar from_int(std::int64_t v) const {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<Scalar>(r < 0 ? r + p_ : r);
    }

    Scalar add(Scalar a, Scalar b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const {
        return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Scalar inv(Scalar a) const {
        if (a == 0) throw std::domain_error("division by zero in " + tag());
        // Fermat: a^(p-2)
        std::uint64_t result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<Scalar>(result);
    }
    Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }

    /// Accepts "n" or "a/b"; the fraction is read as a * b^{-1}.
    Scalar parse(std::string_view text) const {
        auto [num, den] = detail::split_fraction(text);
        return div(from_int(detail::parse_int(num)), from_int(detail::parse_int(den)));
    }
    std::string to_string(Scalar a) const { return std::to_string(a); }

    template <class Rng>
    Scalar random(Rng& rng) const {
        return std::uniform_int_distribution<std::uint32_t>(0, p_ - 1)(rng);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// The rationals, with arbitrary-precision numerator and denominator.
class RationalField {
public:
    using Scalar = boost::multiprecision::cpp_rational;

    std::string tag() const { return "Q"; }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }
    bool is_zero(const Scalar& a) const { return a == 0; }
    Scalar from_int(std::int64_t v) const { return Scalar(v); }

    Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
    Scalar neg(const Scalar& a) const { return -a; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar inv(const Scalar& a) const {
        if (a == 0) throw std::domain_error("division by zero in Q");
        return Scalar(1) / a;
    }
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    Scalar parse(std::string_view text) const {
        auto [num, den] = detail::split_fraction(text);
        auto d = detail::parse_int(den);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Scalar(detail::parse_int(num)) / Scalar(d);
    }
    std::string to_string(const Scalar& a) const {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(a) == 1) return numerator(a).str();
        return numerator(a).str() + "/" + denominator(a).str();
    }

    /// Small integers; enough to make random identities non-degenerate.
    template <class Rng>
    Scalar random(Rng& rng) const {
        return Scalar(std::uniform_int_distribution<int>(-4, 4)(rng));
    }

    friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class F>
concept ExactField = std::equality_comparable<F> && requires(const F& f, const typename F::Scalar& a,
                                                             std::mt19937_64& rng) {
    { f.zero() } -> std::convertible_to<typename F::Scalar>;
    { f.one() } -> std::convertible_to<typename F::Scalar>;
    { f.add(a, a) } -> std::convertible_to<typename F::Scalar>;
    { f.sub(a, a) } -> std::convertible_to<typename F::Scalar>;
    { f.mul(a, a) } -> std::convertible_to<typename F::Scalar>;
    { f.neg(a) } -> std::convertible_to<typename F::Scalar>;
    { f.inv(a) } -> std::convertible_to<typename F::Scalar>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Scalar>;
    { f.tag() } -> std::convertible_to<std::string>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
    { f.random(rng) } -> std::convertible_to<typename F::Scalar>;
};

template <ExactField F>
void require_same_field(const F& a, const F& b) {
    if (!(a == b)) throw FieldMismatch();
}

/// (-1)^e as a field element.
template <ExactField F>
typename F::Scalar sign_of(const F& field, long long e) {
    return (e % 2 == 0) ? field.one() : field.neg(field.one());
}

}  // namespace hhs2
