#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/gauge_theory.hpp"
#include "coulomb/linalg.hpp"
#include "coulomb/rational.hpp"

namespace coulomb {

/// Eigenvalue exp(2 pi i torsion) * s^generic, written additively:
/// torsion in Q/Z (kept in [0,1)), generic in Z^r. Products of labels are sums.
struct EigenvalueLabel {
    Rational torsion = 0;
    std::vector<int> generic;

    static EigenvalueLabel identity(std::size_t rank) { return {Rational(0), std::vector<int>(rank, 0)}; }
    static EigenvalueLabel make(const Rational& torsion, std::vector<int> generic) {
        EigenvalueLabel l{torsion, std::move(generic)};
        l.reduce();
        return l;
    }

    std::size_t rank() const { return generic.size(); }
    bool is_identity() const {
        return torsion == 0 && std::all_of(generic.begin(), generic.end(), [](int x) { return x == 0; });
    }

    EigenvalueLabel& operator*=(const EigenvalueLabel& o) {
        if (o.generic.size() != generic.size()) throw InvalidArgument("eigenvalue labels of different rank");
        torsion += o.torsion;
        for (std::size_t i = 0; i < generic.size(); ++i) generic[i] += o.generic[i];
        reduce();
        return *this;
    }
    friend EigenvalueLabel operator*(EigenvalueLabel a, const EigenvalueLabel& b) { return a *= b; }

    EigenvalueLabel pow(int k) const {
        EigenvalueLabel r{torsion * k, generic};
        for (int& x : r.generic) x *= k;
        r.reduce();
        return r;
    }
    EigenvalueLabel inverse() const { return pow(-1); }

    friend bool operator==(const EigenvalueLabel& a, const EigenvalueLabel& b) {
        return a.torsion == b.torsion && a.generic == b.generic;
    }
    /// Torsion first, then generic exponents lexicographically.
    friend bool operator<(const EigenvalueLabel& a, const EigenvalueLabel& b) {
        if (a.torsion != b.torsion) return a.torsion < b.torsion;
        return a.generic < b.generic;
    }

    std::string str() const {
        std::string s = "{" + to_string(torsion) + ";";
        for (std::size_t i = 0; i < generic.size(); ++i) s += (i ? "," : "") + std::to_string(generic[i]);
        return s + "}";
    }

private:
    void reduce() {
        torsion.canonicalize();
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), torsion.get_num_mpz_t(), torsion.get_den_mpz_t());
        torsion -= fl;
    }
};

/// Eigenvalues of a torus element on every gauge and flavor coordinate.
struct FixedPointDatum {
    std::vector<EigenvalueLabel> gauge;
    std::vector<EigenvalueLabel> flavor;

    static FixedPointDatum trivial(const GaugeTheory& t, std::size_t rank = 1) {
        return {std::vector<EigenvalueLabel>(t.gauge_rank(), EigenvalueLabel::identity(rank)),
                std::vector<EigenvalueLabel>(t.flavor_rank(), EigenvalueLabel::identity(rank))};
    }

    friend bool operator==(const FixedPointDatum&, const FixedPointDatum&) = default;
};

namespace detail {

inline void check_datum(const GaugeTheory& t, const FixedPointDatum& d) {
    if (d.gauge.size() != t.gauge_rank()) throw InvalidArgument("datum: one label per gauge coordinate required");
    if (d.flavor.size() != t.flavor_rank()) throw InvalidArgument("datum: one label per flavor coordinate required");
    std::optional<std::size_t> r;
    for (const auto* v : {&d.gauge, &d.flavor})
        for (const auto& l : *v) {
            if (r && *r != l.rank()) throw InvalidArgument("datum labels must share one generic rank");
            r = l.rank();
        }
}

inline std::size_t datum_rank(const FixedPointDatum& d) {
    if (!d.gauge.empty()) return d.gauge.front().rank();
    if (!d.flavor.empty()) return d.flavor.front().rank();
    return 0;
}

inline EigenvalueLabel evaluate(const std::vector<int>& coeffs, const std::vector<EigenvalueLabel>& labels,
                                std::size_t rank) {
    EigenvalueLabel r = EigenvalueLabel::identity(rank);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) r *= labels[i].pow(coeffs[i]);
    return r;
}

} // namespace detail

/// Label of the character chi at the datum.
inline EigenvalueLabel weight_label(const MatterWeight& w, const FixedPointDatum& d) {
    const std::size_t r = detail::datum_rank(d);
    return detail::evaluate(w.gauge, d.gauge, r) * detail::evaluate(w.flavor, d.flavor, r);
}

/// Eigenvalue multiplicities of the gauge element on each V_i.
inline std::vector<std::map<EigenvalueLabel, int>> centralizer_blocks(const GaugeTheory& t, const FixedPointDatum& d) {
    detail::check_datum(t, d);
    const Quiver& q = t.quiver();
    auto off = t.vertex_offsets();
    std::vector<std::map<EigenvalueLabel, int>> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t k = off[i]; k < off[i + 1]; ++k) ++out[i][d.gauge[k]];
    return out;
}

/// Quiver theory of the fixed locus, with bookkeeping back to the original.
struct FixedMatter {
    GaugeTheory theory;
    std::vector<std::pair<std::size_t, EigenvalueLabel>> vertex_labels; // (original vertex, eigenvalue)
    std::vector<std::size_t> gauge_map;                                  // new gauge coordinate -> original
};

/// Vertices (i, lambda) for the eigenvalues lambda on V_i and W_i; arrow e:
/// i->j with flavor eigenvalue eta becomes (i,lambda) -> (j, lambda eta^{-1});
/// framing leg with eigenvalue eta stays at (i, eta). Flavor coordinates are
/// those of the original theory.
inline FixedMatter fixed_matter(const GaugeTheory& t, const FixedPointDatum& d) {
    detail::check_datum(t, d);
    const Quiver& q = t.quiver();
    const FlavorAssignment& fl = t.flavor();
    const std::size_t r = detail::datum_rank(d);
    auto blocks = centralizer_blocks(t, d);
    auto off = t.vertex_offsets();

    std::vector<std::map<EigenvalueLabel, std::vector<std::vector<int>>>> legs(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (const auto& leg : fl.legs[i]) legs[i][detail::evaluate(leg, d.flavor, r)].push_back(leg);

    FixedMatter out;
    Quiver nq;
    FlavorAssignment nf;
    nf.maximal = false;
    nf.rank = fl.rank;
    std::map<std::pair<std::size_t, EigenvalueLabel>, int> index;
    for (std::size_t i = 0; i < q.size(); ++i) {
        std::set<EigenvalueLabel> labels;
        for (const auto& [l, n] : blocks[i]) labels.insert(l);
        for (const auto& [l, v] : legs[i]) labels.insert(l);
        if (labels.empty()) labels.insert(EigenvalueLabel::identity(r));
        for (const auto& l : labels) {
            index[{i, l}] = static_cast<int>(nq.vertices.size());
            nq.vertices.push_back(q.vertices[i] + (l.is_identity() && blocks[i].size() <= 1 ? "" : l.str()));
            auto bit = blocks[i].find(l);
            nq.dims.push_back(bit == blocks[i].end() ? 0 : bit->second);
            auto lit = legs[i].find(l);
            nq.framing.push_back(lit == legs[i].end() ? 0 : static_cast<int>(lit->second.size()));
            nf.legs.push_back(lit == legs[i].end() ? std::vector<std::vector<int>>{} : lit->second);
            out.vertex_labels.emplace_back(i, l);
            for (std::size_t k = off[i]; k < off[i + 1]; ++k)
                if (d.gauge[k] == l) out.gauge_map.push_back(k);
        }
    }
    for (std::size_t e = 0; e < q.arrows.size(); ++e) {
        auto [s, tgt] = q.arrows[e];
        EigenvalueLabel eta = detail::evaluate(fl.arrows[e], d.flavor, r);
        for (const auto& [key, src] : index) {
            if (key.first != static_cast<std::size_t>(s)) continue;
            auto it = index.find({static_cast<std::size_t>(tgt), key.second * eta.inverse()});
            if (it == index.end()) continue;
            nq.arrows.emplace_back(src, it->second);
            nf.arrows.push_back(fl.arrows[e]);
        }
    }
    FlavorAssignment maximal = FlavorAssignment::make_maximal(nq);
    maximal.maximal = false;
    if (nf == maximal) nf.maximal = true;
    out.theory = GaugeTheory::from_quiver(std::move(nq), std::move(nf), std::nullopt, t.name() + "_fixed");
    return out;
}

/// Type A_k quiver with arrows (i+1) -> i, the shape produced by the Jordan
/// quiver at the cocharacter (s,...,s^k; s; s,...,s^k).
inline GaugeTheory jordan_to_typeA(const std::vector<int>& v_parts, const std::vector<int>& w_parts) {
    if (v_parts.size() != w_parts.size() || v_parts.empty())
        throw InvalidArgument("jordan_to_typeA: v and w parts must have the same positive length");
    Quiver q;
    for (std::size_t i = 0; i < v_parts.size(); ++i) q.vertices.push_back(std::to_string(i + 1));
    for (std::size_t i = 0; i + 1 < v_parts.size(); ++i)
        q.arrows.emplace_back(static_cast<int>(i + 1), static_cast<int>(i));
    q.dims = v_parts;
    q.framing = w_parts;
    return GaugeTheory::from_quiver(q, std::nullopt, std::nullopt, "jordan_typeA");
}

/// The Jordan quiver theory (one vertex, one loop) with dims sum v, framing
/// sum w, and the datum assigning s^i to v_i gauge and w_i framing
/// coordinates and s to the loop.
inline std::pair<GaugeTheory, FixedPointDatum> jordan_specialization(const std::vector<int>& v_parts,
                                                                     const std::vector<int>& w_parts) {
    int v = 0, w = 0;
    for (int x : v_parts) v += x;
    for (int x : w_parts) w += x;
    Quiver q{{"1"}, {{0, 0}}, {v}, {w}};
    GaugeTheory t = GaugeTheory::from_quiver(q, std::nullopt, std::nullopt, "jordan");
    FixedPointDatum d;
    for (std::size_t i = 0; i < v_parts.size(); ++i)
        for (int k = 0; k < v_parts[i]; ++k) d.gauge.push_back(EigenvalueLabel::make(0, {static_cast<int>(i + 1)}));
    d.flavor.push_back(EigenvalueLabel::make(0, {1}));
    for (std::size_t i = 0; i < w_parts.size(); ++i)
        for (int k = 0; k < w_parts[i]; ++k) d.flavor.push_back(EigenvalueLabel::make(0, {static_cast<int>(i + 1)}));
    return {t, d};
}

// ---------------------------------------------------------------------------
// Weight multiplicities of finite simply-laced Lie algebras.

using IntMatrix = std::vector<std::vector<int>>;

/// Cartan matrix (Bourbaki numbering) of A_n, D_n (n >= 3), E6, E7, E8.
inline IntMatrix cartan_matrix(const std::string& type) {
    if (type.size() < 2) throw InvalidArgument("unknown Lie type '" + type + "'");
    const char family = type[0];
    int n = 0;
    try {
        n = std::stoi(type.substr(1));
    } catch (const std::exception&) {
        throw InvalidArgument("unknown Lie type '" + type + "'");
    }
    IntMatrix c(static_cast<std::size_t>(std::max(n, 0)), std::vector<int>(static_cast<std::size_t>(std::max(n, 0)), 0));
    auto link = [&c](int a, int b) {
        c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = -1;
        c[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = -1;
    };
    if (family == 'A' && n >= 1) {
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
    } else if (family == 'D' && n >= 3) {
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
    } else if (family == 'E' && n >= 6 && n <= 8) {
        link(0, 2);
        link(1, 3);
        for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
    } else {
        throw InvalidArgument("unsupported Lie type '" + type + "'");
    }
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
    return c;
}

/// True iff the symmetric matrix is positive definite (leading minors > 0).
inline bool positive_definite(const IntMatrix& c) {
    for (std::size_t k = 1; k <= c.size(); ++k) {
        std::vector<std::vector<int>> m(k, std::vector<int>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m[i][j] = c[i][j];
        if (linalg::determinant(m) <= 0) return false;
    }
    return true;
}

/// Root system data of a finite simply-laced Cartan matrix.
class RootSystem {
public:
    explicit RootSystem(IntMatrix cartan) : c_(std::move(cartan)), n_(c_.size()) {
        for (std::size_t i = 0; i < n_; ++i) {
            if (c_[i].size() != n_ || c_[i][i] != 2) throw InvalidArgument("malformed Cartan matrix");
            for (std::size_t j = 0; j < n_; ++j)
                if (c_[i][j] != c_[j][i] || (i != j && c_[i][j] > 0))
                    throw InvalidArgument("Cartan matrix must be symmetric with non-positive off-diagonal entries");
        }
        if (!positive_definite(c_)) throw InvalidArgument("Cartan matrix is not of finite type");
        linalg::Matrix m = linalg::to_matrix(c_);
        for (std::size_t i = 0; i < n_; ++i) {
            m[i].resize(2 * n_);
            m[i][n_ + i] = 1;
        }
        linalg::rref(m, n_);
        inv_.assign(n_, linalg::Row(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) inv_[i][j] = m[i][n_ + j];
        build_roots();
    }

    std::size_t rank() const { return n_; }
    const IntMatrix& cartan() const { return c_; }
    /// Positive roots in root coordinates.
    const std::vector<std::vector<int>>& positive_roots() const { return roots_; }

    /// Weight (Dynkin labels) of a root-lattice vector.
    std::vector<int> to_weight(const std::vector<int>& root_coords) const {
        std::vector<int> w(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) w[i] += c_[i][j] * root_coords[j];
        return w;
    }
    /// Root coordinates of a weight, if it lies in the root lattice.
    std::optional<std::vector<int>> to_root_coords(const std::vector<int>& weight) const {
        std::vector<int> r(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < n_; ++j) s += inv_[i][j] * weight[j];
            if (!is_integer(s)) return std::nullopt;
            r[i] = static_cast<int>(s.get_num().get_si());
        }
        return r;
    }
    /// (a, b) for weights in Dynkin labels.
    Rational inner(const std::vector<int>& a, const std::vector<int>& b) const {
        Rational s = 0;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) s += inv_[i][j] * a[i] * b[j];
        return s;
    }
    /// Dominant Weyl conjugate of a weight in Dynkin labels.
    std::vector<int> dominant(std::vector<int> w) const {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < n_; ++i) {
                if (w[i] >= 0) continue;
                const int m = w[i];
                for (std::size_t j = 0; j < n_; ++j) w[j] -= m * c_[i][j];
                changed = true;
            }
        }
        return w;
    }

private:
    void build_roots() {
        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> frontier;
        for (std::size_t i = 0; i < n_; ++i) {
            std::vector<int> a(n_, 0);
            a[i] = 1;
            seen.insert(a);
            frontier.push_back(a);
        }
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& b : frontier) {
                auto w = to_weight(b);
                for (std::size_t i = 0; i < n_; ++i) {
                    if (w[i] != -1) continue;
                    auto nb = b;
                    ++nb[i];
                    if (seen.insert(nb).second) next.push_back(nb);
                }
            }
            frontier = std::move(next);
        }
        roots_.assign(seen.begin(), seen.end());
        std::sort(roots_.begin(), roots_.end(), [](const auto& a, const auto& b) {
            int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
            return ha != hb ? ha < hb : a < b;
        });
    }

    IntMatrix c_;
    std::size_t n_;
    linalg::Matrix inv_;
    std::vector<std::vector<int>> roots_;
};

/// Highest weight lambda = sum w_i omega_i and weight mu = lambda - sum v_i alpha_i.
struct KacMoodyData {
    IntMatrix cartan;
    std::vector<int> w;
    std::vector<int> v;
};

/// dim V(lambda)_mu by Freudenthal's formula, memoized on dominant weights.
inline long weight_multiplicity(const KacMoodyData& data) {
    const RootSystem rs(data.cartan);
    const std::size_t n = rs.rank();
    if (data.w.size() != n || data.v.size() != n) throw InvalidArgument("weight data has wrong length");
    for (int x : data.w)
        if (x < 0) throw NotDominant("highest weight is not dominant");
    for (int x : data.v)
        if (x < 0) return 0;

    const std::vector<int>& lambda = data.w;
    std::vector<int> rho(n, 1);
    auto plus = [n](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + b[i];
        return r;
    };
    const Rational top = rs.inner(plus(lambda, rho), plus(lambda, rho));
    std::vector<std::vector<int>> root_weights;
    for (const auto& a : rs.positive_roots()) root_weights.push_back(rs.to_weight(a));

    auto below = [&](const std::vector<int>& mu) {
        std::vector<int> diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = lambda[i] - mu[i];
        auto r = rs.to_root_coords(diff);
        return r && std::all_of(r->begin(), r->end(), [](int x) { return x >= 0; });
    };

    std::map<std::vector<int>, long> memo;
    auto mult = [&](auto&& self, const std::vector<int>& mu0) -> long {
        std::vector<int> mu = rs.dominant(mu0);
        if (mu == lambda) return 1;
        if (!below(mu)) return 0;
        if (auto it = memo.find(mu); it != memo.end()) return it->second;
        Rational sum = 0;
        for (const auto& a : root_weights) {
            std::vector<int> nu = plus(mu, a);
            while (below(nu)) {
                long m = self(self, nu);
                if (m) sum += Rational(m) * rs.inner(nu, a);
                nu = plus(nu, a);
            }
        }
        Rational denom = top - rs.inner(plus(mu, rho), plus(mu, rho));
        long value = 0;
        if (denom > 0) {
            Rational q = 2 * sum / denom;
            if (!is_integer(q)) throw InvalidArgument("internal: non-integral Freudenthal quotient");
            value = q.get_num().get_si();
        }
        memo[mu] = value;
        return value;
    };

    std::vector<int> mu(n);
    std::vector<int> beta = rs.to_weight(data.v);
    for (std::size_t i = 0; i < n; ++i) mu[i] = lambda[i] - beta[i];
    return mult(mult, mu);
}

inline long weight_multiplicity(const std::string& type, const std::vector<int>& w, const std::vector<int>& v) {
    return weight_multiplicity(KacMoodyData{cartan_matrix(type), w, v});
}

/// Same, with mu given in fundamental-weight coordinates.
inline long weight_multiplicity_of_weight(const std::string& type, const std::vector<int>& w,
                                          const std::vector<int>& mu) {
    IntMatrix c = cartan_matrix(type);
    const RootSystem rs(c);
    if (w.size() != rs.rank() || mu.size() != rs.rank()) throw InvalidArgument("weight data has wrong length");
    for (int x : w)
        if (x < 0) throw NotDominant("highest weight is not dominant");
    std::vector<int> diff(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) diff[i] = w[i] - mu[i];
    auto v = rs.to_root_coords(diff);
    if (!v) return 0;
    return weight_multiplicity(KacMoodyData{std::move(c), w, *v});
}

// ---------------------------------------------------------------------------
// Fibers over a flavor value.

enum class Relevance { relevant, irrelevant, unknown };

inline const char* relevance_name(Relevance r) {
    switch (r) {
    case Relevance::relevant: return "relevant";
    case Relevance::irrelevant: return "irrelevant";
    case Relevance::unknown: return "unknown";
    }
    return "unknown";
}

struct FiberPoint {
    std::vector<EigenvalueLabel> gauge;
    GaugeTheory theory;
    Relevance relevance = Relevance::unknown;
};

/// V(lambda)_mu != 0 for each connected component of a quiver theory with
/// positive dimensions; unknown for components with loops, multiple edges
/// or non-finite type.
inline Relevance quiver_relevance(const GaugeTheory& t) {
    const Quiver& q = t.quiver();
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q.dims[i] > 0) live.push_back(i);
    std::vector<int> comp(q.size(), -1);
    int ncomp = 0;
    for (auto s : live) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto [a, b] : q.arrows) {
                for (auto [x, y] : {std::pair<int, int>{a, b}, std::pair<int, int>{b, a}}) {
                    auto ux = static_cast<std::size_t>(x), uy = static_cast<std::size_t>(y);
                    if (ux == v && q.dims[uy] > 0 && comp[uy] < 0) {
                        comp[uy] = ncomp;
                        stack.push_back(uy);
                    }
                }
            }
        }
        ++ncomp;
    }
    Relevance result = Relevance::relevant;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<std::size_t> vs;
        for (auto v : live)
            if (comp[v] == c) vs.push_back(v);
        IntMatrix cm(vs.size(), std::vector<int>(vs.size(), 0));
        bool simple = true;
        for (std::size_t i = 0; i < vs.size(); ++i) cm[i][i] = 2;
        for (auto [a, b] : q.arrows) {
            auto ia = std::find(vs.begin(), vs.end(), static_cast<std::size_t>(a));
            auto ib = std::find(vs.begin(), vs.end(), static_cast<std::size_t>(b));
            if (ia == vs.end() || ib == vs.end()) continue;
            if (ia == ib) {
                simple = false;
                continue;
            }
            auto i = static_cast<std::size_t>(ia - vs.begin()), j = static_cast<std::size_t>(ib - vs.begin());
            if (cm[i][j] != 0) simple = false;
            cm[i][j] = cm[j][i] = -1;
        }
        if (!simple || !positive_definite(cm)) {
            result = Relevance::unknown;
            continue;
        }
        std::vector<int> w, v;
        for (auto x : vs) {
            w.push_back(q.framing[x]);
            v.push_back(q.dims[x]);
        }
        if (weight_multiplicity(KacMoodyData{cm, w, v}) == 0) return Relevance::irrelevant;
    }
    return result;
}

namespace detail {

/// Drop zero-dimensional vertices (they carry no matter).
inline GaugeTheory strip_empty_vertices(const GaugeTheory& t) {
    const Quiver& q = t.quiver();
    const FlavorAssignment& f = t.flavor();
    Quiver nq;
    FlavorAssignment nf;
    nf.maximal = false;
    nf.rank = f.rank;
    std::vector<int> map(q.size(), -1);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q.dims[i] == 0) continue;
        map[i] = static_cast<int>(nq.vertices.size());
        nq.vertices.push_back(q.vertices[i]);
        nq.dims.push_back(q.dims[i]);
        nq.framing.push_back(q.framing[i]);
        nf.legs.push_back(f.legs[i]);
    }
    for (std::size_t e = 0; e < q.arrows.size(); ++e) {
        auto [a, b] = q.arrows[e];
        if (map[static_cast<std::size_t>(a)] < 0 || map[static_cast<std::size_t>(b)] < 0) continue;
        nq.arrows.emplace_back(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
        nf.arrows.push_back(f.arrows[e]);
    }
    return GaugeTheory::from_quiver(std::move(nq), std::move(nf), std::nullopt, t.name());
}

} // namespace detail

/// Gauge eigenvalue assignments over the flavor value `flavor` at which the
/// surviving matter weights constrain every gauge coordinate, with their
/// fixed-point sub-theories. `additive` treats labels as points of a vector
/// space (no roots of unity), as for cohomological fibers.
inline std::vector<FiberPoint> fiber_decomposition(const GaugeTheory& t, std::vector<EigenvalueLabel> flavor,
                                                   bool additive = false) {
    if (!t.abelian()) throw NonabelianUnsupported("fiber_decomposition requires an abelian theory");
    if (flavor.size() != t.flavor_rank()) throw InvalidArgument("one flavor label per flavor coordinate required");
    const std::size_t d = t.gauge_rank();
    std::size_t r = flavor.empty() ? 1 : flavor.front().rank();
    for (const auto& l : flavor)
        if (l.rank() != r) throw InvalidArgument("flavor labels must share one generic rank");
    const auto ws = t.weights();
    if (d == 0) return {};

    struct Candidate {
        std::vector<Rational> torsion;
        std::vector<std::vector<Rational>> generic; // [coordinate][direction]
    };
    std::vector<Candidate> cands;
    for (const auto& sub : linalg::subsets(ws.size(), d)) {
        std::vector<std::vector<int>> g;
        for (auto s : sub) g.push_back(ws[s].gauge);
        if (linalg::rank(g) != d) continue;
        linalg::Matrix gm = linalg::to_matrix(g);
        std::vector<EigenvalueLabel> eta;
        for (auto s : sub) eta.push_back(detail::evaluate(ws[s].flavor, flavor, r));
        Candidate base;
        base.generic.assign(d, std::vector<Rational>(r));
        for (std::size_t k = 0; k < r; ++k) {
            linalg::Row rhs(d);
            for (std::size_t i = 0; i < d; ++i) rhs[i] = -eta[i].generic[k];
            auto x = linalg::solve(gm, rhs, d);
            for (std::size_t i = 0; i < d; ++i) base.generic[i][k] = (*x)[i];
        }
        linalg::Row trhs(d);
        for (std::size_t i = 0; i < d; ++i) trhs[i] = -eta[i].torsion;
        const long det = std::abs(linalg::determinant(g).get_si());
        const long span = additive ? 1 : det;
        std::vector<long> shift(d, 0);
        for (;;) {
            linalg::Row rhs = trhs;
            for (std::size_t i = 0; i < d; ++i) rhs[i] += shift[i];
            auto x = linalg::solve(gm, rhs, d);
            Candidate c = base;
            c.torsion = *x;
            if (additive) c.torsion.assign(d, Rational(0));
            cands.push_back(std::move(c));
            std::size_t i = 0;
            while (i < d && shift[i] == span - 1) shift[i++] = 0;
            if (i == d) break;
            ++shift[i];
        }
    }

    // Rescale generic directions so that every coordinate is integral.
    Integer den = 1;
    for (const auto& c : cands)
        for (const auto& row : c.generic)
            for (const auto& v : row) den = lcm(den, Integer(v.get_den()));
    const int scale = static_cast<int>(den.get_si());
    std::vector<EigenvalueLabel> sflavor;
    for (const auto& l : flavor) {
        auto g = l.generic;
        for (int& x : g) x *= scale;
        sflavor.push_back(EigenvalueLabel::make(additive ? Rational(0) : l.torsion, g));
    }

    std::set<std::vector<EigenvalueLabel>> seen;
    std::vector<FiberPoint> out;
    for (const auto& c : cands) {
        std::vector<EigenvalueLabel> gauge;
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<int> g(r);
            for (std::size_t k = 0; k < r; ++k) g[k] = static_cast<int>(Rational(c.generic[i][k] * scale).get_num().get_si());
            gauge.push_back(EigenvalueLabel::make(c.torsion[i], g));
        }
        if (!seen.insert(gauge).second) continue;
        FixedPointDatum datum{gauge, sflavor};
        std::vector<MatterWeight> surviving;
        std::vector<std::vector<int>> parts;
        for (const auto& w : ws)
            if (weight_label(w, datum).is_identity()) {
                surviving.push_back(w);
                parts.push_back(w.gauge);
            }
        if (linalg::rank(parts) != d) continue;
        FiberPoint p;
        p.gauge = gauge;
        if (t.is_quiver()) {
            p.theory = detail::strip_empty_vertices(fixed_matter(t, datum).theory);
            p.relevance = quiver_relevance(p.theory);
        } else {
            p.theory = GaugeTheory::raw(d, t.flavor_rank(), surviving, t.nu(), t.name() + "_fixed");
            p.relevance = linalg::in_span(parts, t.nu()) ? Relevance::relevant : Relevance::irrelevant;
        }
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), [](const FiberPoint& a, const FiberPoint& b) { return a.gauge < b.gauge; });
    return out;
}

/// Labels of a rational flavor point in the additive setting: one generic
/// direction carrying the (integer-scaled) value of each coordinate.
inline std::vector<EigenvalueLabel> additive_labels(const std::vector<Rational>& point) {
    Integer den = 1;
    for (const auto& v : point) den = lcm(den, Integer(v.get_den()));
    std::vector<EigenvalueLabel> out;
    for (const auto& v : point) {
        Rational s = v * den;
        out.push_back(EigenvalueLabel::make(0, {static_cast<int>(s.get_num().get_si())}));
    }
    return out;
}

} // namespace coulomb
