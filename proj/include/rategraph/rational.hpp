#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rategraph {

// Exact arithmetic everywhere a result is part of the contract. BigInt grows
// without bound; Rational is kept in lowest terms with a positive denominator
// by the backend, so sums are associative bit for bit and independent of
// evaluation order.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p", or "p/q" (q > 0 after normalization). Also accepts plain
// decimal strings like "0.25", which are exact. Throws ValidationError.
Rational parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Bridges exact quantities into the active evaluation scalar. Computation
// kernels are templated on S in {Rational, double}: exact mode evaluates the
// sums bit for bit, float mode evaluates the same expression tree in double
// precision.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static Rational from(const Rational& v) { return v; }
    static Rational from(const BigInt& v) { return Rational(v); }
    static Rational from(long long v) { return Rational(v); }
};

template <>
struct ScalarOps<double> {
    static double from(const Rational& v) { return to_double(v); }
    static double from(const BigInt& v) { return v.convert_to<double>(); }
    static double from(long long v) { return static_cast<double>(v); }
};

}  // namespace rategraph
