#include "equipart/testmap.hpp"

#include <cmath>
#include <string>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

void check_index(Label index, int k) {
    if (index >= (Label{1} << k)) {
        throw Error(ErrorKind::InvalidLabel, "index " + std::to_string(index) + " has bits beyond k = " + std::to_string(k));
    }
}

}  // namespace

double dft_from_masses(std::span<const double> masses, Label index) {
    long double acc = 0.0L;
    for (Label j = 0; j < masses.size(); ++j) acc += dft_sign(index, j) * static_cast<long double>(masses[j]);
    return static_cast<double>(acc);
}

double dft_component(const Measure& mu, const Configuration& c, Label index) {
    check_index(index, c.size());
    return dft_from_masses(orthant_masses(mu, c), index);
}

double orthant_basis_component(const Measure& mu, const Configuration& c, Label eps) {
    check_index(eps, c.size());
    return orthant_basis(mu, c)[eps];
}

std::vector<double> orthant_basis(const Measure& mu, const Configuration& c) {
    auto masses = orthant_masses(mu, c);
    const double share = total_mass(mu) / static_cast<double>(masses.size());
    for (auto& m : masses) m -= share;
    return masses;
}

double bisector_product(const Measure& mu, const Configuration& c) {
    double prod = 1.0;
    for (const auto& h : c.planes) prod *= bisector_defect(mu, h);
    return prod;
}

std::vector<double> TestVector::flatten() const {
    std::vector<double> out;
    for (const auto& block : full_blocks) out.insert(out.end(), block.begin(), block.end());
    out.insert(out.end(), bisector_values.begin(), bisector_values.end());
    return out;
}

double TestVector::norm() const {
    long double acc = 0.0L;
    for (double v : flatten()) acc += static_cast<long double>(v) * v;
    return static_cast<double>(std::sqrt(acc));
}

TestVector full_test_map(const Configuration& c, std::span<const Measure> full_measures,
                         std::span<const Measure> bisector_measures) {
    bool any_positive = false;
    for (const auto& mu : full_measures) any_positive = any_positive || total_mass(mu) > 0.0;
    if (!any_positive) {
        throw Error(ErrorKind::TrivialMeasures,
                    "every fully equipartitioned measure has zero total mass; then (H, ..., H) with H a "
                    "common bisector is a trivial zero and the test map proves nothing");
    }
    TestVector v;
    v.k = c.size();
    const Label n = Label{1} << c.size();
    for (const auto& mu : full_measures) {
        const auto masses = orthant_masses(mu, c);
        std::vector<double> block;
        block.reserve(n - 1);
        for (Label i = 1; i < n; ++i) block.push_back(dft_from_masses(masses, i));
        v.full_blocks.push_back(std::move(block));
    }
    for (const auto& mu : bisector_measures) v.bisector_values.push_back(bisector_product(mu, c));
    return v;
}

TestVector act(const GroupElement& g, const TestVector& v) {
    if (g.size() != v.k) throw Error(ErrorKind::SizeMismatch, "group element and test vector rank differ");
    const GroupElement inv = g.inverse();
    TestVector out = v;
    const Label n = Label{1} << v.k;
    for (std::size_t b = 0; b < v.full_blocks.size(); ++b) {
        for (Label i = 1; i < n; ++i) {
            const Label src = permute_bits(inv.perm, i);
            out.full_blocks[b][i - 1] = dft_sign(i, g.flips) * v.full_blocks[b][src - 1];
        }
    }
    const double sign = (__builtin_popcount(g.flips) & 1) ? -1.0 : 1.0;
    for (auto& x : out.bisector_values) x *= sign;
    return out;
}

ShieldResult shielding_check(const Measure& mu, const Configuration& c, Label index, double tol) {
    check_index(index, c.size());
    std::vector<int> members;
    for (int i = 0; i < c.size(); ++i) {
        if ((index >> i) & 1U) members.push_back(i);
    }
    if (members.empty() || members.size() % 2 != 0) return {};

    const auto& first = c.planes[static_cast<std::size_t>(members.front())];
    bool all_equal = true;
    for (int m : members) all_equal = all_equal && approx_equal(c.planes[static_cast<std::size_t>(m)], first, tol);
    bool antipodal = false;
    if (members.size() == 2) {
        antipodal = approx_equal(c.planes[static_cast<std::size_t>(members[1])], first.antipode(), tol);
    }
    if (!all_equal && !antipodal) return {};
    return {true, dft_component(mu, c, index)};
}

}  // namespace equipart
