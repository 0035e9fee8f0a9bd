#pragma once

#include <vector>

#include "rategraph/rational.hpp"

namespace rategraph {

// C(n, k); zero when k < 0 or k > n. The out-of-range convention is load
// bearing: the signed binomial products over mid rectangles rely on it to
// vanish exactly when a local diagonal leaves its rectangle.
BigInt binomial(long long n, long long k);

BigInt factorial(int n);

// n! / (parts[0]! * parts[1]! * ...). The parts must sum to n exactly;
// otherwise PartsSumMismatch.
BigInt multinomial(int n, const std::vector<int>& parts);

// Signed Stirling numbers of the first kind and the two derived coefficient
// tables used by the clique-cover expansions:
//
//   s(j, i):      coefficient of x^i in x(x-1)...(x-j+1)
//   tau(j, k)  =  sum_{i=k+1..j} s(j, i)
//   lambda(j,k)=  sum_{i=k+1..j} (i-k) s(j, i)
//
// All three satisfy the recursion f(j+1, i) = f(j, i-1) - j f(j, i).
class StirlingTables {
public:
    explicit StirlingTables(int j_max);

    int j_max() const { return j_max_; }

    // Zero for i outside [0, j]. j must be in [0, j_max].
    const BigInt& s(int j, int i) const;

    // Zero for k >= j (empty sums). k must be >= 0, j in [0, j_max].
    const BigInt& tau(int j, int k) const;
    const BigInt& lambda(int j, int k) const;

private:
    int j_max_;
    std::vector<std::vector<BigInt>> s_;       // s_[j][i], 0 <= i <= j
    std::vector<std::vector<BigInt>> tau_;     // tau_[j][k], 0 <= k < j
    std::vector<std::vector<BigInt>> lambda_;  // lambda_[j][k], 0 <= k < j
    BigInt zero_;
};

}  // namespace rategraph
