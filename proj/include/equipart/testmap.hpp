#pragma once

// Test functions of the configuration-space / test-map scheme: the DFT
// components f_I of hyperorthant masses, the orthant-basis view, the product
// of bisector defects, and the shielding values on the singular set.

#include <optional>
#include <span>
#include <vector>

#include "equipart/geometry.hpp"
#include "equipart/measures.hpp"

namespace equipart {

// (-1)^{|I & J|}
inline int dft_sign(Label i, Label j) { return (__builtin_popcount(i & j) & 1) ? -1 : 1; }

// f_I = sum_J (-1)^{<I,J>} a_J. Works from precomputed orthant masses.
double dft_from_masses(std::span<const double> masses, Label index);

double dft_component(const Measure& mu, const Configuration& c, Label index);

// mu(O_eps) - mu(total) / 2^k
double orthant_basis_component(const Measure& mu, const Configuration& c, Label eps);
std::vector<double> orthant_basis(const Measure& mu, const Configuration& c);

// prod_i (mu(h_i+) - mu(h_i-))
double bisector_product(const Measure& mu, const Configuration& c);

struct TestVector {
    int k = 0;
    // One block per fully equipartitioned measure; entry I - 1 holds f_I, I = 1..2^k-1.
    std::vector<std::vector<double>> full_blocks;
    std::vector<double> bisector_values;

    std::vector<double> flatten() const;
    double norm() const;
    bool operator==(const TestVector&) const = default;
};

// Throws TrivialMeasures when no full measure has positive mass: then h = (H, ..., H)
// with H bisecting everything is a spurious zero and the scheme degenerates.
TestVector full_test_map(const Configuration& c, std::span<const Measure> full_measures,
                         std::span<const Measure> bisector_measures = {});

// Induced action on test vectors: (g.v)_I = (-1)^{<I, flips>} v_{perm^-1(I)}; each
// bisector product picks up (-1)^{|flips|}. full_test_map(act(g, c)) == act(g, full_test_map(c)).
TestVector act(const GroupElement& g, const TestVector& v);

struct ShieldResult {
    bool shielded = false;
    double value = 0.0;
};

// If |I| is even and the planes indexed by I all coincide, f_I equals the total
// mass of mu. If I = {i, j} and h_i is the antipode of h_j, f_I equals minus the
// total mass. Otherwise the hypothesis fails and nothing is claimed.
ShieldResult shielding_check(const Measure& mu, const Configuration& c, Label index, double tol = 1e-12);

}  // namespace equipart
