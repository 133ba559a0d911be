#pragma once

#include <span>
#include <string>
#include <vector>

#include "pcert/decimal.hpp"
#include "pcert/engine.hpp"
#include "pcert/lattice.hpp"

namespace pcert {

// Whole-rectangle evaluation by breadth-first labelling: no strips, no
// streaming. Kept deliberately separate from the scan.
struct FlatEvent {
    std::int64_t left_size = 0;
    bool left_unique = false;
    std::int64_t right_size = 0;
    bool right_unique = false;
    bool joined = false;
    bool holds = false;
};

FlatEvent flat_evaluate(const RectGraph& g, Mode mode, std::span<const std::uint8_t> open);

// Pr_p(event) = sum_k c_k p^k (1-p)^(M-k).
struct EventPolynomial {
    std::string lattice;
    RectGeometry geom;
    Mode mode = Mode::site;
    int elements = 0;
    std::vector<BigInt> coefficients;   // size elements + 1

    Rational evaluate(const Rational& p) const;
    double evaluate(double p) const;
};

constexpr int oracle_element_budget = 28;

// Exhaustive over all 2^M element states; throws if M exceeds the budget.
EventPolynomial exact_event_polynomial(const LatticeRep& lat, const RectGeometry& geom, Mode mode,
                                       int budget = oracle_element_budget);

std::string format_polynomial(const EventPolynomial& poly);
EventPolynomial parse_polynomial(const std::string& text);

struct OracleComparison {
    Estimate estimate;
    double exact = 0.0;
    double z = 0.0;
};

// z = (m/n - pi) / sqrt(pi (1 - pi) / n); defined as 0 when pi is 0 or 1
// and the estimate agrees exactly.
double z_score(std::int64_t successes, std::int64_t n, double pi);

OracleComparison compare_engine_to_oracle(const LatticeRep& lat, const EventPolynomial& poly, const Probability& p,
                                          std::int64_t n, std::uint32_t base_seed);

}  // namespace pcert
