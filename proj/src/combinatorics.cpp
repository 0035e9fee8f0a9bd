#include "rategraph/combinatorics.hpp"

#include <algorithm>
#include <string>

#include "rategraph/errors.hpp"

namespace rategraph {

BigInt binomial(long long n, long long k) {
    if (n < 0) {
        throw ValidationError("binomial: n must be nonnegative");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt result = 1;
    for (long long i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

BigInt factorial(int n) {
    if (n < 0) {
        throw ValidationError("factorial: n must be nonnegative");
    }
    BigInt result = 1;
    for (int i = 2; i <= n; ++i) {
        result *= i;
    }
    return result;
}

BigInt multinomial(int n, const std::vector<int>& parts) {
    if (n < 0) {
        throw ValidationError("multinomial: n must be nonnegative");
    }
    long long sum = 0;
    for (int part : parts) {
        if (part < 0) {
            throw ValidationError("multinomial: parts must be nonnegative");
        }
        sum += part;
    }
    if (sum != n) {
        throw PartsSumMismatch("multinomial: parts sum to " + std::to_string(sum) +
                               ", expected " + std::to_string(n));
    }
    BigInt result = factorial(n);
    for (int part : parts) {
        result /= factorial(part);
    }
    return result;
}

StirlingTables::StirlingTables(int j_max) : j_max_(j_max), zero_(0) {
    if (j_max < 0) {
        throw ValidationError("StirlingTables: j_max must be nonnegative");
    }
    s_.resize(j_max + 1);
    s_[0] = {BigInt(1)};
    for (int j = 1; j <= j_max; ++j) {
        s_[j].assign(j + 1, BigInt(0));
        for (int i = 1; i <= j; ++i) {
            // s(j, i) = s(j-1, i-1) - (j-1) s(j-1, i)
            s_[j][i] = s_[j - 1][i - 1];
            if (i <= j - 1) {
                s_[j][i] -= BigInt(j - 1) * s_[j - 1][i];
            }
        }
    }

    tau_.resize(j_max + 1);
    lambda_.resize(j_max + 1);
    for (int j = 0; j <= j_max; ++j) {
        tau_[j].assign(j, BigInt(0));
        lambda_[j].assign(j, BigInt(0));
        // Suffix sums: tau(j, k) accumulates s(j, i) for i > k, and
        // lambda(j, k) accumulates tau(j, t) for t >= k.
        BigInt tail = 0;
        for (int k = j - 1; k >= 0; --k) {
            tau_[j][k] = (k + 1 < j ? tau_[j][k + 1] : BigInt(0)) + s_[j][k + 1];
            tail += tau_[j][k];
            lambda_[j][k] = tail;
        }
    }
}

const BigInt& StirlingTables::s(int j, int i) const {
    if (j < 0 || j > j_max_) {
        throw ValidationError("StirlingTables::s: j out of range");
    }
    if (i < 0 || i > j) {
        return zero_;
    }
    return s_[j][i];
}

const BigInt& StirlingTables::tau(int j, int k) const {
    if (j < 0 || j > j_max_) {
        throw ValidationError("StirlingTables::tau: j out of range");
    }
    if (k < 0) {
        throw ValidationError("StirlingTables::tau: k must be nonnegative");
    }
    if (k >= j) {
        return zero_;
    }
    return tau_[j][k];
}

const BigInt& StirlingTables::lambda(int j, int k) const {
    if (j < 0 || j > j_max_) {
        throw ValidationError("StirlingTables::lambda: j out of range");
    }
    if (k < 0) {
        throw ValidationError("StirlingTables::lambda: k must be nonnegative");
    }
    if (k >= j) {
        return zero_;
    }
    return lambda_[j][k];
}

}  // namespace rategraph
