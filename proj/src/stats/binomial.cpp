#include "pcert/stats.hpp"

#include <stdexcept>

namespace pcert {

namespace {

// t[k] = C(N,k) a^k b^(N-k) with p0 = a / den, b = den - a; the tail from m
// is (t[m] + ... + t[N]) / den^N.
struct TailTerms {
    std::vector<BigInt> t;
    BigInt denominator;
};

TailTerms tail_terms(int N, const Rational& p0)
{
    if (N < 0) throw std::invalid_argument("binomial tail: negative trial count");
    if (p0 < 0 || p0 > 1) throw std::invalid_argument("binomial tail: p0 outside [0,1]");
    const BigInt a = boost::multiprecision::numerator(p0);
    const BigInt den = boost::multiprecision::denominator(p0);
    const BigInt b = den - a;
    TailTerms out;
    out.t.resize(N + 1);
    std::vector<BigInt> apow(N + 1), bpow(N + 1);
    apow[0] = bpow[0] = 1;
    for (int i = 1; i <= N; ++i) {
        apow[i] = apow[i - 1] * a;
        bpow[i] = bpow[i - 1] * b;
    }
    BigInt binom = 1;
    for (int k = 0; k <= N; ++k) {
        out.t[k] = binom * apow[k] * bpow[N - k];
        binom = binom * (N - k) / (k + 1);
    }
    out.denominator = 1;
    for (int i = 0; i < N; ++i) out.denominator *= den;
    return out;
}

}  // namespace

Rational binomial_tail(const TailQuery& q)
{
    if (q.threshold < 0 || q.threshold > q.trials)
        throw std::invalid_argument("binomial tail: threshold outside [0, trials]");
    const TailTerms terms = tail_terms(q.trials, q.p0);
    BigInt sum = 0;
    for (int k = q.threshold; k <= q.trials; ++k) sum += terms.t[k];
    return Rational(sum, terms.denominator);
}

int min_threshold(int trials, const Rational& p0, const Rational& eps)
{
    if (eps <= 0) throw std::invalid_argument("min_threshold: eps must be positive");
    const TailTerms terms = tail_terms(trials, p0);
    // tails are nonincreasing in m: walk down from m = N while still <= eps
    const BigInt limit = boost::multiprecision::numerator(eps) * terms.denominator;
    const BigInt scale = boost::multiprecision::denominator(eps);
    BigInt sum = 0;
    int best = -1;
    for (int m = trials; m >= 0; --m) {
        sum += terms.t[m];
        if (sum * scale <= limit) best = m;   // sum / den^N <= eps
        else break;
    }
    if (best < 0)
        throw std::invalid_argument("min_threshold: no threshold reaches the error budget with " +
                                    std::to_string(trials) + " trials");
    return best;
}

Rational percolation_p0() { return Rational(8639, 10000); }
Rational run_error_budget() { return Rational(1, 6'000'000); }
Rational interval_error_budget() { return Rational(1, 1'000'000); }

}  // namespace pcert
