#include "equipart/graycode.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "equipart/errors.hpp"

namespace equipart {

namespace {

void dfs(int k, Label v, std::vector<bool>& seen, std::vector<int>& path, std::vector<FlipSequence>& out) {
    const std::size_t total = std::size_t{1} << k;
    if (path.size() + 1 == total) {
        out.push_back(FlipSequence{k, path});
        return;
    }
    for (int b = 0; b < k; ++b) {
        const Label w = v ^ (Label{1} << b);
        if (seen[w]) continue;
        seen[w] = true;
        path.push_back(b);
        dfs(k, w, seen, path, out);
        path.pop_back();
        seen[w] = false;
    }
}

void check_label(Label label, int k) {
    if (label >= (Label{1} << k)) {
        throw Error(ErrorKind::InvalidLabel,
                    "label " + std::to_string(label) + " does not fit in k = " + std::to_string(k) + " bits");
    }
}

std::vector<int> identity_perm(int k) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    return perm;
}

}  // namespace

std::vector<FlipSequence> flip_sequences(int k, bool allow_large) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    if (k > kMaxDefaultBits && !allow_large) {
        throw Error(ErrorKind::TooManyBits,
                    "k = " + std::to_string(k) + " exceeds " + std::to_string(kMaxDefaultBits) +
                        "; the number of Hamiltonian paths explodes (pass allow_large to override)");
    }
    if (k > 6) throw Error(ErrorKind::TooManyBits, "k > 6 is not enumerable");
    std::vector<FlipSequence> out;
    std::vector<bool> seen(std::size_t{1} << k, false);
    seen[0] = true;
    std::vector<int> path;
    dfs(k, 0, seen, path, out);
    // Bits are tried in increasing order, so `out` is already lexicographic.
    return out;
}

bool is_hamiltonian(const FlipSequence& s, Label start) {
    check_label(start, s.k);
    const std::size_t total = std::size_t{1} << s.k;
    if (s.flips.size() + 1 != total) return false;
    std::vector<bool> seen(total, false);
    Label v = start;
    seen[v] = true;
    for (int b : s.flips) {
        if (b < 0 || b >= s.k) return false;
        v ^= Label{1} << b;
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

FlipCountVector flip_counts(const FlipSequence& s) {
    FlipCountVector counts(static_cast<std::size_t>(s.k), 0);
    for (int b : s.flips) {
        if (b < 0 || b >= s.k) throw Error(ErrorKind::InvalidArgument, "flip index out of range");
        ++counts[static_cast<std::size_t>(b)];
    }
    return counts;
}

Label end_vertex(const FlipSequence& s, Label start) {
    check_label(start, s.k);
    Label v = start;
    const auto counts = flip_counts(s);
    for (int b = 0; b < s.k; ++b) {
        if (counts[static_cast<std::size_t>(b)] % 2 != 0) v ^= Label{1} << b;
    }
    return v;
}

std::vector<Label> CrossingPattern::interval_labels() const {
    std::vector<Label> labels{start};
    Label v = start;
    for (const auto& iv : intervals) {
        for (int b : iv.planes) v ^= Label{1} << b;
        labels.push_back(v);
    }
    return labels;
}

std::vector<int> CrossingPattern::plane_totals() const {
    std::vector<int> totals(static_cast<std::size_t>(k), 0);
    for (const auto& iv : intervals) {
        for (int b : iv.planes) {
            if (b < 0 || b >= k) throw Error(ErrorKind::InvalidArgument, "plane index out of range");
            ++totals[static_cast<std::size_t>(b)];
        }
    }
    return totals;
}

void validate_pattern(const CrossingPattern& p) {
    if (p.k < 1) throw Error(ErrorKind::InvalidArgument, "pattern needs k >= 1");
    check_label(p.start, p.k);
    Label v = p.start;
    for (std::size_t i = 0; i < p.intervals.size(); ++i) {
        const auto& iv = p.intervals[i];
        if (iv.kind == ConstraintKind::Full) {
            const FlipSequence s{p.k, iv.planes};
            if (!is_hamiltonian(s, v)) {
                throw Error(ErrorKind::InvalidArgument,
                            "interval " + std::to_string(i) + " is not a Hamiltonian walk of the " +
                                std::to_string(p.k) + "-cube");
            }
            v = end_vertex(s, v);
        } else {
            if (iv.planes.size() != 1 || iv.planes[0] < 0 || iv.planes[0] >= p.k) {
                throw Error(ErrorKind::InvalidArgument,
                            "bisector interval " + std::to_string(i) + " must name exactly one plane");
            }
            v ^= Label{1} << iv.planes[0];
        }
    }
}

CrossingPattern relabel(const CrossingPattern& p, std::span<const int> perm) {
    CrossingPattern out = p;
    out.start = permute_bits(perm, p.start);
    for (auto& iv : out.intervals) {
        for (auto& b : iv.planes) b = perm[static_cast<std::size_t>(b)];
    }
    return out;
}

CrossingPattern act(const GroupElement& g, const CrossingPattern& p) {
    if (g.size() != p.k) throw Error(ErrorKind::SizeMismatch, "group element rank differs from pattern");
    CrossingPattern out = relabel(p, g.perm);
    out.start ^= g.flips;
    return out;
}

CrossingPattern canonical_pattern(const CrossingPattern& p) {
    CrossingPattern pinned = p;
    pinned.start = 0;
    auto perm = identity_perm(p.k);
    CrossingPattern best = pinned;
    do {
        auto candidate = relabel(pinned, perm);
        if (candidate < best) best = std::move(candidate);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

int stabilizer_order(const CrossingPattern& p) {
    CrossingPattern pinned = p;
    pinned.start = 0;
    auto perm = identity_perm(p.k);
    int count = 0;
    do {
        if (relabel(pinned, perm) == pinned) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

}  // namespace equipart
