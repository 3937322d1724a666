#pragma once

// Hamiltonian flip sequences on the k-cube, their flip-count types, and the
// crossing patterns they assemble into, with canonical forms under the
// hyperoctahedral group.

#include <compare>
#include <vector>

#include "equipart/geometry.hpp"

namespace equipart {

inline constexpr int kMaxDefaultBits = 4;

// Bit indices (0-based) flipped in order along a Hamiltonian path of the k-cube.
struct FlipSequence {
    int k = 0;
    std::vector<int> flips;

    auto operator<=>(const FlipSequence&) const = default;
};

using FlipCountVector = std::vector<int>;

// Throws TooManyBits for k > 4 unless allow_large is set.
std::vector<FlipSequence> flip_sequences(int k, bool allow_large = false);

bool is_hamiltonian(const FlipSequence& s, Label start);

FlipCountVector flip_counts(const FlipSequence& s);

Label end_vertex(const FlipSequence& s, Label start);

enum class ConstraintKind { Full, Bisector };

// One interval of a pattern. For Full intervals `planes` is the flip sequence;
// for Bisector intervals it holds the single crossing plane.
struct IntervalPattern {
    ConstraintKind kind = ConstraintKind::Full;
    std::vector<int> planes;

    auto operator<=>(const IntervalPattern&) const = default;
};

// Combinatorial type of a zero: the orthant label where the first interval
// starts, and which plane crosses the curve at each crossing, interval by interval.
struct CrossingPattern {
    int k = 0;
    Label start = 0;
    std::vector<IntervalPattern> intervals;

    auto operator<=>(const CrossingPattern&) const = default;

    // Orthant label at the start of each interval, plus the final label.
    std::vector<Label> interval_labels() const;
    std::vector<int> plane_totals() const;
};

// Validates chaining (each Full interval is a Hamiltonian walk from the label
// the previous interval ended on) and index ranges. Throws InvalidArgument.
void validate_pattern(const CrossingPattern& p);

// Action of the hyperoctahedral group on patterns.
CrossingPattern act(const GroupElement& g, const CrossingPattern& p);

// Relabel planes by perm (plane j becomes perm[j]); start is permuted too.
CrossingPattern relabel(const CrossingPattern& p, std::span<const int> perm);

// Start pinned to label 0, then the lexicographic minimum over all k!
// relabelings of the planes.
CrossingPattern canonical_pattern(const CrossingPattern& p);

// Number of permutations fixing the start-pinned pattern.
int stabilizer_order(const CrossingPattern& p);

}  // namespace equipart
