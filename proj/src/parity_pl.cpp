#include "equipart/parity_pl.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "equipart/errors.hpp"
#include "equipart/geometry.hpp"

namespace equipart {

namespace {

using Mat = std::vector<std::vector<double>>;
using RMat = std::vector<std::vector<Rational>>;

std::string face_name(const Face& f) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + "}";
}

Face sorted(Face f) {
    std::sort(f.begin(), f.end());
    return f;
}

int sign_of(const Rational& x) { return x.sign(); }

RMat to_rational(const Mat& a) {
    RMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (double x : a[i]) r[i].emplace_back(x);
    }
    return r;
}

Rational exact_det(RMat a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

double double_det(const Mat& a) {
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m.partialPivLu().determinant();
}

// Sign of a determinant; the double value is trusted only well away from zero.
int det_sign(const Mat& a) {
    if (a.empty()) return 1;
    double hadamard = 1.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double x : row) s += x * x;
        hadamard *= std::sqrt(s);
    }
    if (hadamard == 0.0) return 0;
    const double d = double_det(a);
    if (std::abs(d) > 1e-12 * hadamard) return d > 0 ? 1 : -1;
    return sign_of(exact_det(to_rational(a)));
}

// Exact: is 0 in the convex hull of the given points?
bool origin_in_hull(const RMat& pts) {
    const std::size_t m = pts.size();
    if (m == 0) return false;
    const std::size_t dim = pts[0].size();
    // Columns are [p_j; 1], right-hand side (0, ..., 0, 1).
    RMat a(dim + 1, std::vector<Rational>(m + 1));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < dim; ++i) a[i][j] = pts[j][i];
        a[dim][j] = 1;
    }
    a[dim][m] = 1;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        const Rational lead = a[row][c];
        for (auto& x : a[row]) x /= lead;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c] == 0) continue;
            const Rational f = a[r][c];
            for (std::size_t k = 0; k <= m; ++k) a[r][k] -= f * a[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    for (std::size_t r = row; r < a.size(); ++r) {
        if (a[r][m] != 0) return false;
    }
    if (pivots.size() == m) {
        for (std::size_t r = 0; r < m; ++r) {
            if (a[r][m] < 0) return false;
        }
        return true;
    }
    for (std::size_t drop = 0; drop < m; ++drop) {
        RMat sub;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != drop) sub.push_back(pts[j]);
        }
        if (origin_in_hull(sub)) return true;
    }
    return false;
}

Mat rows_of(const PLManifoldMap& m, const Face& f, std::size_t components) {
    Mat out;
    for (int v : f) {
        const auto& val = m.values[static_cast<std::size_t>(v)];
        out.emplace_back(val.begin(), val.begin() + static_cast<std::ptrdiff_t>(components));
    }
    return out;
}

// 0 in the hull of k points of R^k (k = 0 means the empty face, never hit).
bool square_face_contains_origin(const Mat& pts) {
    if (pts.empty()) return false;
    if (det_sign(pts) != 0) return false;
    return origin_in_hull(to_rational(pts));
}

// All sub-faces of `f` obtained by dropping one vertex.
std::vector<Face> facets_of(const Face& f) {
    std::vector<Face> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Face g;
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (j != i) g.push_back(f[j]);
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::set<Face> all_codim1_faces(const PLManifoldMap& m) {
    std::set<Face> faces;
    for (const auto& s : m.simplices) {
        for (auto& f : facets_of(s)) faces.insert(std::move(f));
    }
    return faces;
}

bool simplex_contains_origin(const PLManifoldMap& m, const Face& s) {
    const std::size_t n = static_cast<std::size_t>(m.n);
    Mat rows;
    for (int v : s) {
        auto r = m.values[static_cast<std::size_t>(v)];
        r.push_back(1.0);
        rows.push_back(std::move(r));
    }
    const int d = det_sign(rows);
    if (d == 0) return false;  // flat image; genericity keeps 0 off it
    for (std::size_t i = 0; i <= n; ++i) {
        Mat ri = rows;
        ri[i].assign(n + 1, 0.0);
        ri[i][n] = 1.0;
        if (det_sign(ri) != d) return false;
    }
    return true;
}

enum class Hit { None, Ray, Opposite };

struct LineHit {
    Hit hit = Hit::None;
    std::vector<double> mu;  // barycentric coordinates on the face when hit
};

// Where does the line R v meet the image of boundary face f? Degenerate
// contacts (through a lower face, or a face parallel to v) are refused;
// when only the positive ray matters, contacts on the opposite side pass.
LineHit line_hit(const PLManifoldMap& m, const Face& f, const std::vector<double>& v, bool full_line) {
    const std::size_t n = static_cast<std::size_t>(m.n);
    Mat rows;
    for (int u : f) {
        auto r = m.values[static_cast<std::size_t>(u)];
        r.push_back(1.0);
        rows.push_back(std::move(r));
    }
    std::vector<double> last(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) last[i] = -v[i];
    rows.push_back(last);

    const int d = det_sign(rows);
    if (d == 0) {
        // Parallel: project along v and ask whether the line meets the face at all.
        RMat proj;
        Rational vv = 0;
        std::vector<Rational> rv;
        for (double x : v) rv.emplace_back(x);
        for (const auto& x : rv) vv += x * x;
        for (int u : f) {
            std::vector<Rational> w;
            for (double x : m.values[static_cast<std::size_t>(u)]) w.emplace_back(x);
            Rational wv = 0;
            for (std::size_t i = 0; i < n; ++i) wv += w[i] * rv[i];
            for (std::size_t i = 0; i < n; ++i) w[i] -= wv / vv * rv[i];
            proj.push_back(std::move(w));
        }
        if (origin_in_hull(proj)) {
            throw Error(ErrorKind::NonTransverseRay,
                        "the ray direction is parallel to the image of face " + face_name(f) +
                            " and touches it; retry with a jittered ray");
        }
        return {};
    }
    std::vector<int> s(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        Mat rj = rows;
        rj[j].assign(n + 1, 0.0);
        rj[j][n] = 1.0;
        s[j] = det_sign(rj) * d;
    }
    const int lambda = s[n];
    bool any_negative = false;
    bool any_zero = false;
    for (std::size_t j = 0; j < n; ++j) {
        any_negative = any_negative || s[j] < 0;
        any_zero = any_zero || s[j] == 0;
    }
    if (any_negative) return {};
    if (lambda == 0) {
        throw Error(ErrorKind::GenericityViolation, "0 lies in the image of boundary face " + face_name(f));
    }
    if (any_zero) {
        if (!full_line && lambda < 0) return {};
        throw Error(ErrorKind::NonTransverseRay, "the ray meets the image of face " + face_name(f) +
                                                     " on its boundary; retry with a jittered ray");
    }
    LineHit out;
    out.hit = lambda > 0 ? Hit::Ray : Hit::Opposite;
    // Barycentric coordinates for callers that need the point itself.
    const double dd = double_det(rows);
    for (std::size_t j = 0; j < n; ++j) {
        Mat rj = rows;
        rj[j].assign(n + 1, 0.0);
        rj[j][n] = 1.0;
        out.mu.push_back(double_det(rj) / dd);
    }
    return out;
}

PLManifoldMap prepared(const PLManifoldMap& m) {
    PLManifoldMap out = m;
    out.validate();
    return out;
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t input_hash(const PLManifoldMap& m, const std::vector<double>& ray) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& val : m.values) h = fnv1a(h, val.data(), val.size() * sizeof(double));
    for (const auto& s : m.simplices) h = fnv1a(h, s.data(), s.size() * sizeof(int));
    return fnv1a(h, ray.data(), ray.size() * sizeof(double));
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int count_ray_hits(const PLManifoldMap& m, const std::vector<Face>& faces, const std::vector<double>& v) {
    int parity = 0;
    for (const auto& f : faces) {
        if (line_hit(m, f, v, false).hit == Hit::Ray) parity ^= 1;
    }
    return parity;
}

std::vector<double> unit_last(int n) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e.back() = 1.0;
    return e;
}

void check_ray(const PLManifoldMap& m, const RaySpec& ray) {
    if (ray.direction.size() != static_cast<std::size_t>(m.n)) {
        throw Error(ErrorKind::DimensionMismatch, "ray has " + std::to_string(ray.direction.size()) +
                                                      " components, the map has n = " + std::to_string(m.n));
    }
    bool nonzero = false;
    for (double x : ray.direction) {
        if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "ray direction must be finite");
        nonzero = nonzero || x != 0.0;
    }
    if (!nonzero) throw Error(ErrorKind::InvalidArgument, "ray direction must be nonzero");
}

// Linear change of coordinates sending v to +e_n (a coordinate swap and a shear).
void reframe(PLManifoldMap& m, const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(v[i]) > std::abs(v[j])) j = i;
    }
    for (auto& x : m.values) {
        std::vector<double> y(n);
        std::size_t slot = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            y[slot++] = x[i] - v[i] / v[j] * x[j];
        }
        y[n - 1] = x[j] / v[j];
        x = std::move(y);
    }
}

double dist_to_hull(const std::vector<Eigen::VectorXd>& pts) {
    if (pts.size() == 1) return pts[0].norm();
    const auto k = static_cast<Eigen::Index>(pts.size() - 1);
    Eigen::MatrixXd e(pts[0].size(), k);
    for (Eigen::Index i = 0; i < k; ++i) e.col(i) = pts[static_cast<std::size_t>(i) + 1] - pts[0];
    const Eigen::MatrixXd gram = e.transpose() * e;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (lu.isInvertible()) {
        const Eigen::VectorXd t = lu.solve(-e.transpose() * pts[0]);
        if (t.minCoeff() >= 0.0 && t.sum() <= 1.0) return (pts[0] + e * t).norm();
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t drop = 0; drop < pts.size(); ++drop) {
        std::vector<Eigen::VectorXd> sub;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i != drop) sub.push_back(pts[i]);
        }
        best = std::min(best, dist_to_hull(sub));
    }
    return best;
}

}  // namespace

void PLManifoldMap::validate() {
    if (n < 1 || n > 3) throw Error(ErrorKind::InvalidDimension, "PL maps are supported for n = 1, 2, 3");
    if (simplices.empty()) throw Error(ErrorKind::InvalidMesh, "mesh has no simplices");
    for (std::size_t v = 0; v < values.size(); ++v) {
        if (values[v].size() != static_cast<std::size_t>(n)) {
            throw Error(ErrorKind::InvalidMesh, "vertex " + std::to_string(v) + " value must have n components");
        }
        for (double x : values[v]) {
            if (!std::isfinite(x)) throw Error(ErrorKind::InvalidMesh, "vertex " + std::to_string(v) + " value is not finite");
        }
    }
    std::map<Face, int> incidence;
    for (auto& s : simplices) {
        s = sorted(s);
        if (s.size() != static_cast<std::size_t>(n) + 1) {
            throw Error(ErrorKind::InvalidMesh, "simplex " + face_name(s) + " must have n + 1 vertices");
        }
        if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.front() < 0 || s.back() >= vertex_count()) {
            throw Error(ErrorKind::InvalidMesh, "simplex " + face_name(s) + " has repeated or unknown vertices");
        }
        for (auto& f : facets_of(s)) ++incidence[f];
    }
    std::vector<Face> computed;
    for (const auto& [f, count] : incidence) {
        if (count > 2) {
            throw Error(ErrorKind::InvalidMesh, "face " + face_name(f) + " lies in " + std::to_string(count) +
                                                    " simplices; not a pseudomanifold");
        }
        if (count == 1) computed.push_back(f);
    }
    if (boundary.empty()) {
        boundary = computed;
        return;
    }
    for (auto& f : boundary) f = sorted(f);
    std::sort(boundary.begin(), boundary.end());
    if (boundary != computed) {
        throw Error(ErrorKind::InvalidMesh, "declared boundary differs from the faces lying in exactly one simplex");
    }
}

void check_genericity(const PLManifoldMap& m) {
    const auto mm = prepared(m);
    for (const auto& f : all_codim1_faces(mm)) {
        if (square_face_contains_origin(rows_of(mm, f, static_cast<std::size_t>(mm.n)))) {
            throw Error(ErrorKind::GenericityViolation, "0 lies in the image of face " + face_name(f));
        }
    }
}

int zero_parity(const PLManifoldMap& m) {
    const auto mm = prepared(m);
    check_genericity(mm);
    int parity = 0;
    for (const auto& s : mm.simplices) {
        if (simplex_contains_origin(mm, s)) parity ^= 1;
    }
    return parity;
}

RayResult ray_parity(const PLManifoldMap& m, const RaySpec& ray, int max_retries) {
    const auto mm = prepared(m);
    check_ray(mm, ray);
    RayResult out;
    out.ray = ray.direction;
    std::mt19937_64 rng(input_hash(mm, ray.direction));
    std::normal_distribution<double> gauss;
    double len = 0.0;
    for (double x : ray.direction) len += x * x;
    len = std::sqrt(len);
    for (int attempt = 0;; ++attempt) {
        try {
            out.parity = count_ray_hits(mm, mm.boundary, out.ray);
            out.retries = attempt;
            return out;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NonTransverseRay || attempt >= max_retries) throw;
        }
        for (std::size_t i = 0; i < out.ray.size(); ++i) {
            out.ray[i] = ray.direction[i] / len + 0.05 * (attempt + 1) * gauss(rng);
        }
    }
}

BoundaryIdentity boundary_identity(const PLManifoldMap& m, std::optional<RaySpec> ray) {
    const auto mm = prepared(m);
    BoundaryIdentity out;
    out.lhs = zero_parity(mm);
    out.ray = ray ? ray_parity(mm, *ray) : ray_parity(mm, RaySpec{unit_last(mm.n)}, kDefaultRayRetries);
    out.rhs = out.ray.parity;
    out.equal = out.lhs == out.rhs;
    return out;
}

DecompositionResult decompose_parity(const PLManifoldMap& m, const std::vector<DecompositionPiece>& pieces,
                                     std::optional<RaySpec> ray) {
    auto mm = prepared(m);
    check_genericity(mm);
    const std::size_t n = static_cast<std::size_t>(mm.n);

    std::map<Face, int> owner;
    for (const auto& f : mm.boundary) owner[f] = -1;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (const auto& raw : pieces[i].faces) {
            const Face f = sorted(raw);
            auto it = owner.find(f);
            if (it == owner.end()) {
                throw Error(ErrorKind::InvalidArgument, "piece " + std::to_string(i) + " face " + face_name(f) +
                                                            " is not a boundary face");
            }
            if (it->second != -1) {
                throw Error(ErrorKind::InvalidArgument, "boundary face " + face_name(f) + " belongs to pieces " +
                                                            std::to_string(it->second) + " and " + std::to_string(i));
            }
            it->second = static_cast<int>(i);
        }
    }
    for (const auto& [f, i] : owner) {
        if (i == -1) throw Error(ErrorKind::InvalidArgument, "boundary face " + face_name(f) + " is in no piece");
    }

    if (ray) {
        check_ray(mm, *ray);
        reframe(mm, ray->direction);
    }

    for (std::size_t i = 0; i < pieces.size(); ++i) {
        std::map<Face, int> ridge_count;
        for (const auto& raw : pieces[i].faces) {
            for (auto& g : facets_of(sorted(raw))) ++ridge_count[g];
        }
        const auto& shield = pieces[i].shield;
        if (shield && (*shield < 0 || static_cast<std::size_t>(*shield) + 1 >= n)) {
            throw Error(ErrorKind::InvalidArgument, "shield coordinate " + std::to_string(*shield) +
                                                        " is not a component of r' (n - 1 = " +
                                                        std::to_string(n - 1) + ")");
        }
        for (const auto& [g, count] : ridge_count) {
            if (count != 1 || g.empty()) continue;
            if (shield) {
                int s0 = 0;
                bool strict = true;
                for (int v : g) {
                    const double x = mm.values[static_cast<std::size_t>(v)][static_cast<std::size_t>(*shield)];
                    const int s = (x > 0) - (x < 0);
                    strict = strict && s != 0 && (s0 == 0 || s == s0);
                    s0 = s;
                }
                if (!strict) {
                    throw Error(ErrorKind::ShieldViolation,
                                "declared shield coordinate " + std::to_string(*shield) + " of piece " +
                                    std::to_string(i) + " is not of constant sign on frontier face " + face_name(g));
                }
            } else if (square_face_contains_origin(rows_of(mm, g, n - 1))) {
                throw Error(ErrorKind::ShieldViolation,
                            "r' vanishes on frontier face " + face_name(g) + " of piece " + std::to_string(i) +
                                " and no shielding coordinate is declared; the piece parities are not well defined");
            }
        }
    }

    DecompositionResult out;
    const auto e = unit_last(mm.n);
    for (const auto& piece : pieces) {
        std::vector<Face> faces;
        for (const auto& f : piece.faces) faces.push_back(sorted(f));
        out.piece_parities.push_back(count_ray_hits(mm, faces, e));
        out.total ^= out.piece_parities.back();
    }
    out.direct = zero_parity(m);
    out.consistent = out.total == out.direct;
    return out;
}

SymmetricCancelResult symmetric_cancel(const PLManifoldMap& m, const std::vector<Face>& y1,
                                       const std::vector<Face>& y2, const std::vector<int>& beta, int a) {
    const auto mm = prepared(m);
    if (a != 0 && a != 1) throw Error(ErrorKind::InvalidArgument, "a must be 0 or 1");
    if (beta.size() != static_cast<std::size_t>(mm.vertex_count())) {
        throw Error(ErrorKind::SizeMismatch, "beta must map every vertex");
    }
    check_genericity(mm);
    const std::size_t n = static_cast<std::size_t>(mm.n);
    const std::set<Face> boundary(mm.boundary.begin(), mm.boundary.end());
    std::set<Face> s1;
    std::set<Face> s2;
    for (const auto& f : y1) s1.insert(sorted(f));
    for (const auto& f : y2) s2.insert(sorted(f));
    for (const auto* s : {&s1, &s2}) {
        for (const auto& f : *s) {
            if (!boundary.count(f)) throw Error(ErrorKind::InvalidArgument, "face " + face_name(f) + " is not a boundary face");
        }
    }

    const auto e = unit_last(mm.n);
    SymmetricCancelResult out;
    for (const auto& f : s1) {
        const auto h = line_hit(mm, f, e, true);
        if (h.hit == Hit::None) continue;
        ++out.zeros_y1;
        Face image;
        for (int v : f) {
            const int b = beta[static_cast<std::size_t>(v)];
            if (b < 0 || b >= mm.vertex_count()) throw Error(ErrorKind::InvalidSymmetry, "beta is undefined on vertex " + std::to_string(v));
            image.push_back(b);
        }
        const Face g = sorted(image);
        if (!s2.count(g)) {
            throw Error(ErrorKind::InvalidSymmetry, "beta sends the zero on face " + face_name(f) + " to " +
                                                        face_name(g) + ", which is not in the second piece");
        }
        std::vector<double> at(n, 0.0);
        std::vector<double> here(n, 0.0);
        double scale = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const auto& src = mm.values[static_cast<std::size_t>(f[i])];
            const auto& dst = mm.values[static_cast<std::size_t>(image[i])];
            for (std::size_t c = 0; c < n; ++c) {
                here[c] += h.mu[i] * src[c];
                at[c] += h.mu[i] * dst[c];
                scale = std::max(scale, std::abs(dst[c]));
            }
        }
        for (std::size_t c = 0; c + 1 < n; ++c) {
            if (std::abs(at[c]) > 1e-9 * std::max(scale, 1.0)) {
                throw Error(ErrorKind::InvalidSymmetry, "beta does not carry the zero of r' on face " + face_name(f) +
                                                            " to a zero of r'");
            }
        }
        const int before = h.hit == Hit::Ray ? 1 : -1;
        const int after = (at[n - 1] > 0) - (at[n - 1] < 0);
        if (after != (a == 1 ? -before : before)) {
            throw Error(ErrorKind::InvalidSymmetry, "r_n(beta x) does not equal (-1)^a r_n(x) in sign at the zero on face " +
                                                        face_name(f));
        }
    }
    for (const auto& f : s2) {
        if (line_hit(mm, f, e, true).hit != Hit::None) ++out.zeros_y2;
    }
    if (out.zeros_y1 != out.zeros_y2) {
        throw Error(ErrorKind::InvalidSymmetry, "beta is not a bijection on zeros: " + std::to_string(out.zeros_y1) +
                                                    " on the first piece, " + std::to_string(out.zeros_y2) +
                                                    " on the second");
    }
    std::set<Face> both = s1;
    both.insert(s2.begin(), s2.end());
    out.direct = count_ray_hits(mm, std::vector<Face>(both.begin(), both.end()), e);
    out.value = a * (out.zeros_y1 % 2);
    if (out.direct != out.value) {
        throw Error(ErrorKind::InvalidSymmetry, "the pieces overlap or beta is inconsistent: direct count " +
                                                    std::to_string(out.direct) + ", cancellation " +
                                                    std::to_string(out.value));
    }
    return out;
}

double min_face_distance(const PLManifoldMap& m) {
    const auto mm = prepared(m);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : all_codim1_faces(mm)) {
        std::vector<Eigen::VectorXd> pts;
        for (int v : f) {
            const auto& val = mm.values[static_cast<std::size_t>(v)];
            pts.push_back(Eigen::Map<const Eigen::VectorXd>(val.data(), static_cast<Eigen::Index>(val.size())));
        }
        best = std::min(best, dist_to_hull(pts));
    }
    return best;
}

PLManifoldMap cross_polytope_ball(int n, int refine) {
    if (n < 1 || n > 3) throw Error(ErrorKind::InvalidDimension, "PL maps are supported for n = 1, 2, 3");
    if (refine < 0) throw Error(ErrorKind::InvalidArgument, "refine must be >= 0");
    PLManifoldMap m;
    m.n = n;
    const auto un = static_cast<std::size_t>(n);
    m.coords.emplace_back(un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        for (double s : {1.0, -1.0}) {
            std::vector<double> x(un, 0.0);
            x[i] = s;
            m.coords.push_back(std::move(x));
        }
    }
    std::vector<Face> faces;
    for (unsigned signs = 0; signs < (1U << n); ++signs) {
        Face f;
        for (std::size_t i = 0; i < un; ++i) f.push_back(static_cast<int>(1 + 2 * i + ((signs >> i) & 1U)));
        faces.push_back(f);
    }
    if (n >= 2) {
        for (int r = 0; r < refine; ++r) {
            std::map<std::pair<int, int>, int> mids;
            auto mid = [&](int a, int b) {
                const auto key = std::minmax(a, b);
                auto it = mids.find(key);
                if (it != mids.end()) return it->second;
                std::vector<double> x(un);
                for (std::size_t i = 0; i < un; ++i) {
                    x[i] = (m.coords[static_cast<std::size_t>(a)][i] + m.coords[static_cast<std::size_t>(b)][i]) / 2;
                }
                m.coords.push_back(std::move(x));
                const int id = static_cast<int>(m.coords.size()) - 1;
                mids.emplace(key, id);
                return id;
            };
            std::vector<Face> next;
            for (const auto& f : faces) {
                if (n == 2) {
                    const int ab = mid(f[0], f[1]);
                    next.push_back({f[0], ab});
                    next.push_back({ab, f[1]});
                } else {
                    const int ab = mid(f[0], f[1]);
                    const int bc = mid(f[1], f[2]);
                    const int ca = mid(f[2], f[0]);
                    next.push_back({f[0], ab, ca});
                    next.push_back({f[1], ab, bc});
                    next.push_back({f[2], bc, ca});
                    next.push_back({ab, bc, ca});
                }
            }
            faces = std::move(next);
        }
    }
    for (const auto& f : faces) {
        Face s{0};
        s.insert(s.end(), f.begin(), f.end());
        m.simplices.push_back(s);
    }
    m.values.assign(m.coords.size(), std::vector<double>(un, 0.0));
    m.validate();
    return m;
}

void stellar_subdivide(PLManifoldMap& m, std::size_t index) {
    if (index >= m.simplices.size()) throw Error(ErrorKind::InvalidArgument, "no simplex " + std::to_string(index));
    const Face s = m.simplices[index];
    const double w = 1.0 / static_cast<double>(s.size());
    auto average = [&](const std::vector<std::vector<double>>& data) {
        std::vector<double> x(data[static_cast<std::size_t>(s[0])].size(), 0.0);
        for (int v : s) {
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += w * data[static_cast<std::size_t>(v)][i];
        }
        return x;
    };
    if (!m.coords.empty()) m.coords.push_back(average(m.coords));
    m.values.push_back(average(m.values));
    const int c = m.vertex_count() - 1;
    m.simplices.erase(m.simplices.begin() + static_cast<std::ptrdiff_t>(index));
    for (std::size_t i = 0; i < s.size(); ++i) {
        Face t = s;
        t[i] = c;
        m.simplices.push_back(sorted(t));
    }
}

PLManifoldMap kuhn_cube(int n, int divisions) {
    if (n < 1 || n > 3) throw Error(ErrorKind::InvalidDimension, "PL maps are supported for n = 1, 2, 3");
    if (divisions < 1) throw Error(ErrorKind::InvalidArgument, "divisions must be >= 1");
    const auto un = static_cast<std::size_t>(n);
    const int side = divisions + 1;
    int total = 1;
    for (int i = 0; i < n; ++i) total *= side;
    PLManifoldMap m;
    m.n = n;
    auto id = [&](const std::vector<int>& g) {
        int v = 0;
        for (std::size_t i = un; i-- > 0;) v = v * side + g[i];
        return v;
    };
    for (int v = 0; v < total; ++v) {
        std::vector<double> x(un);
        int r = v;
        for (std::size_t i = 0; i < un; ++i) {
            x[i] = static_cast<double>(r % side) / divisions;
            r /= side;
        }
        m.coords.push_back(std::move(x));
    }
    int cells = 1;
    for (int i = 0; i < n; ++i) cells *= divisions;
    for (int c = 0; c < cells; ++c) {
        std::vector<int> base(un);
        int r = c;
        for (std::size_t i = 0; i < un; ++i) {
            base[i] = r % divisions;
            r /= divisions;
        }
        std::vector<int> perm(un);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            auto g = base;
            Face s{id(g)};
            for (int axis : perm) {
                ++g[static_cast<std::size_t>(axis)];
                s.push_back(id(g));
            }
            m.simplices.push_back(sorted(s));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    m.values.assign(m.coords.size(), std::vector<double>(un, 0.0));
    m.validate();
    return m;
}

std::vector<int> antipode_map(const PLManifoldMap& m) {
    if (m.coords.size() != m.values.size()) throw Error(ErrorKind::InvalidArgument, "mesh has no vertex positions");
    std::map<std::vector<double>, int> where;
    for (std::size_t v = 0; v < m.coords.size(); ++v) where.emplace(m.coords[v], static_cast<int>(v));
    std::vector<int> out;
    for (const auto& x : m.coords) {
        std::vector<double> y = x;
        for (auto& c : y) c = c == 0.0 ? 0.0 : -c;
        auto it = where.find(y);
        out.push_back(it == where.end() ? -1 : it->second);
    }
    return out;
}

namespace {

std::vector<Face> hemisphere(const PLManifoldMap& m, int sign) {
    const auto mm = prepared(m);
    if (mm.coords.size() != mm.values.size()) throw Error(ErrorKind::InvalidArgument, "mesh has no vertex positions");
    std::vector<Face> out;
    for (const auto& f : mm.boundary) {
        double last = 0.0;
        for (int v : f) last += mm.coords[static_cast<std::size_t>(v)].back();
        if ((last > 0 && sign > 0) || (last < 0 && sign < 0)) out.push_back(f);
    }
    return out;
}

}  // namespace

std::vector<Face> upper_hemisphere(const PLManifoldMap& m) { return hemisphere(m, 1); }

std::vector<Face> lower_hemisphere(const PLManifoldMap& m) { return hemisphere(m, -1); }

void assign_boundary_odd_values(PLManifoldMap& m, std::uint64_t seed) {
    m.validate();
    const auto anti = antipode_map(m);
    std::vector<bool> on_boundary(m.values.size(), false);
    for (const auto& f : m.boundary) {
        for (int v : f) on_boundary[static_cast<std::size_t>(v)] = true;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    for (std::size_t v = 0; v < m.values.size(); ++v) {
        const int a = anti[v];
        if (on_boundary[v] && (a < 0 || !on_boundary[static_cast<std::size_t>(a)])) {
            throw Error(ErrorKind::InvalidMesh, "boundary vertex " + std::to_string(v) + " has no antipode");
        }
        for (auto& x : m.values[v]) x = gauss(rng);
        if (on_boundary[v] && static_cast<std::size_t>(a) < v) {
            for (std::size_t i = 0; i < m.values[v].size(); ++i) m.values[v][i] = -m.values[static_cast<std::size_t>(a)][i];
        }
    }
}

PLManifoldMap random_boundary_odd_ball(int n, std::uint64_t seed) {
    auto m = cross_polytope_ball(n, n == 2 ? 2 : (n == 3 ? 1 : 0));
    std::mt19937_64 rng(splitmix(seed));
    for (int i = 0; i < 2; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, m.simplices.size() - 1);
        stellar_subdivide(m, pick(rng));
    }
    assign_boundary_odd_values(m, splitmix(seed + 1));
    return m;
}

PLManifoldMap random_generic_map(int n, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix(seed));
    PLManifoldMap m = std::uniform_int_distribution<int>(0, 1)(rng) == 0
                          ? cross_polytope_ball(n, std::uniform_int_distribution<int>(0, 1)(rng))
                          : kuhn_cube(n, std::uniform_int_distribution<int>(1, 2)(rng));
    std::uniform_int_distribution<std::size_t> pick(0, m.simplices.size() - 1);
    stellar_subdivide(m, pick(rng));
    std::normal_distribution<double> gauss;
    for (auto& val : m.values) {
        for (auto& x : val) x = gauss(rng);
    }
    m.validate();
    return m;
}

BorsukUlamReport bu_check(int n, std::uint64_t seed, int trials) {
    if (trials < 0) throw Error(ErrorKind::InvalidArgument, "trials must be >= 0");
    BorsukUlamReport out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    for (int t = 0; t < trials; ++t) {
        out.parities.push_back(zero_parity(random_boundary_odd_ball(n, splitmix(seed ^ splitmix(static_cast<std::uint64_t>(t))))));
    }
    out.all_odd = std::all_of(out.parities.begin(), out.parities.end(), [](int p) { return p == 1; });
    return out;
}

AdversarialInstance adversarial_unshielded() {
    AdversarialInstance out;
    auto& m = out.map;
    m.n = 3;
    m.coords = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
    const std::vector<double> last{1, 2, 3, 1};
    for (std::size_t v = 0; v < 4; ++v) {
        const auto& x = m.coords[v];
        m.values.push_back({x[1] - x[0], x[2] - x[1], last[v]});
    }
    m.simplices = {{0, 1, 2, 3}};
    m.validate();
    out.pieces = {
        {{{0, 1, 3}}, std::nullopt},
        {{{0, 2, 3}}, std::nullopt},
        {{{0, 1, 2}}, std::nullopt},
        {{{1, 2, 3}}, std::nullopt},
    };
    return out;
}

}  // namespace equipart
