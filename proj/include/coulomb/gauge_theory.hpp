#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coulomb/errors.hpp"
#include "coulomb/linalg.hpp"
#include "coulomb/polynomial.hpp"

namespace coulomb {

using Cocharacter = std::vector<int>;

/// A character of T_gauge x T_flavor with its multiplicity in N.
struct MatterWeight {
    std::vector<int> gauge;
    std::vector<int> flavor;
    int multiplicity = 1;

    friend bool operator==(const MatterWeight&, const MatterWeight&) = default;
};

inline int pairing(const std::vector<int>& a, const std::vector<int>& b) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> arrows;
    std::vector<int> dims;
    std::vector<int> framing;

    std::size_t size() const { return vertices.size(); }
    bool abelian() const {
        return std::all_of(dims.begin(), dims.end(), [](int v) { return v <= 1; });
    }
    int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
    int total_framing() const { return std::accumulate(framing.begin(), framing.end(), 0); }

    void validate() const {
        const int n = static_cast<int>(vertices.size());
        if (dims.size() != vertices.size() || framing.size() != vertices.size())
            throw InvalidArgument("dims and framing must have one entry per vertex");
        for (auto [s, t] : arrows)
            if (s < 0 || s >= n || t < 0 || t >= n) throw InvalidArgument("arrow endpoint out of range");
        for (int v : dims)
            if (v < 0) throw InvalidArgument("negative dimension");
        for (int w : framing)
            if (w < 0) throw InvalidArgument("negative framing");
    }

    friend bool operator==(const Quiver&, const Quiver&) = default;
};

/// Flavor assignment: one integer vector of length `rank` per arrow and per
/// framing leg. `maximal` gives every arrow and leg its own coordinate.
struct FlavorAssignment {
    bool maximal = true;
    int rank = 0;
    std::vector<std::vector<int>> arrows;
    std::vector<std::vector<std::vector<int>>> legs; // [vertex][leg]

    static FlavorAssignment make_maximal(const Quiver& q) {
        FlavorAssignment f;
        f.maximal = true;
        f.rank = static_cast<int>(q.arrows.size()) + q.total_framing();
        int next = 0;
        auto unit = [&f](int i) {
            std::vector<int> v(static_cast<std::size_t>(f.rank), 0);
            v[static_cast<std::size_t>(i)] = 1;
            return v;
        };
        for (std::size_t e = 0; e < q.arrows.size(); ++e) f.arrows.push_back(unit(next++));
        f.legs.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int s = 0; s < q.framing[i]; ++s) f.legs[i].push_back(unit(next++));
        return f;
    }

    void validate(const Quiver& q) const {
        if (arrows.size() != q.arrows.size()) throw InvalidArgument("flavor: one vector per arrow required");
        if (legs.size() != q.size()) throw InvalidArgument("flavor: one leg list per vertex required");
        for (std::size_t i = 0; i < q.size(); ++i)
            if (static_cast<int>(legs[i].size()) != q.framing[i])
                throw InvalidArgument("flavor: leg count must equal framing");
        auto check = [this](const std::vector<int>& v) {
            if (static_cast<int>(v.size()) != rank) throw InvalidArgument("flavor vector has wrong length");
        };
        for (const auto& v : arrows) check(v);
        for (const auto& l : legs)
            for (const auto& v : l) check(v);
    }

    friend bool operator==(const FlavorAssignment&, const FlavorAssignment&) = default;
};

/// Which weights `GaugeTheory::weights` returns for nonabelian quivers.
enum class WeightMode {
    abelian_only, // throw NonabelianUnsupported when some v_i >= 2
    torus         // weights of the maximal torus of the gauge group
};

class GaugeTheory {
public:
    GaugeTheory() = default;

    static GaugeTheory from_quiver(Quiver q, std::optional<FlavorAssignment> flavor = std::nullopt,
                                   std::optional<std::vector<int>> nu = std::nullopt, std::string name = {}) {
        q.validate();
        GaugeTheory t;
        t.name_ = std::move(name);
        t.flavor_ = flavor ? std::move(*flavor) : FlavorAssignment::make_maximal(q);
        t.flavor_.validate(q);
        t.quiver_ = std::move(q);
        t.gauge_rank_ = static_cast<std::size_t>(t.quiver_->total_dim());
        t.flavor_rank_ = static_cast<std::size_t>(t.flavor_.rank);
        t.set_nu(std::move(nu));
        return t;
    }

    static GaugeTheory raw(std::size_t gauge_rank, std::size_t flavor_rank, std::vector<MatterWeight> matter,
                           std::optional<std::vector<int>> nu = std::nullopt, std::string name = {}) {
        GaugeTheory t;
        t.name_ = std::move(name);
        t.gauge_rank_ = gauge_rank;
        t.flavor_rank_ = flavor_rank;
        for (const auto& w : matter) {
            if (w.gauge.size() != gauge_rank || w.flavor.size() != flavor_rank)
                throw InvalidArgument("raw matter weight has wrong length");
            if (w.multiplicity <= 0) throw InvalidArgument("matter multiplicity must be positive");
        }
        t.raw_ = aggregate(std::move(matter));
        t.set_nu(std::move(nu));
        return t;
    }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    bool is_quiver() const { return quiver_.has_value(); }
    const Quiver& quiver() const {
        if (!quiver_) throw InvalidArgument("theory is not quiver-derived");
        return *quiver_;
    }
    const FlavorAssignment& flavor() const { return flavor_; }
    const std::vector<MatterWeight>& raw_matter() const { return raw_; }
    std::size_t gauge_rank() const { return gauge_rank_; }
    std::size_t flavor_rank() const { return flavor_rank_; }
    const std::vector<int>& nu() const { return nu_; }
    bool nu_is_determinant() const { return nu_default_; }
    bool abelian() const { return !quiver_ || quiver_->abelian(); }

    /// GL block sizes of the gauge group (all 1 for raw theories).
    std::vector<int> block_dims() const {
        if (!quiver_) return std::vector<int>(gauge_rank_, 1);
        std::vector<int> b;
        for (int v : quiver_->dims)
            if (v > 0) b.push_back(v);
        return b;
    }

    /// First gauge coordinate belonging to each vertex.
    std::vector<std::size_t> vertex_offsets() const {
        const Quiver& q = quiver();
        std::vector<std::size_t> off(q.size() + 1, 0);
        for (std::size_t i = 0; i < q.size(); ++i) off[i + 1] = off[i] + static_cast<std::size_t>(q.dims[i]);
        return off;
    }

    /// Canonical matter list. Arrow i->j gives x_j - x_i + c_e and framing leg
    /// s at i gives c_{i,s} - x_i; equal characters are merged.
    std::vector<MatterWeight> weights(WeightMode mode = WeightMode::abelian_only) const {
        if (!quiver_) return raw_;
        const Quiver& q = *quiver_;
        if (mode == WeightMode::abelian_only && !q.abelian())
            throw NonabelianUnsupported("matter weights of a nonabelian quiver theory");
        auto off = vertex_offsets();
        std::vector<MatterWeight> out;
        for (std::size_t e = 0; e < q.arrows.size(); ++e) {
            auto [s, t] = q.arrows[e];
            for (int a = 0; a < q.dims[static_cast<std::size_t>(s)]; ++a)
                for (int b = 0; b < q.dims[static_cast<std::size_t>(t)]; ++b) {
                    MatterWeight w{std::vector<int>(gauge_rank_, 0), flavor_.arrows[e], 1};
                    w.gauge[off[static_cast<std::size_t>(t)] + static_cast<std::size_t>(b)] += 1;
                    w.gauge[off[static_cast<std::size_t>(s)] + static_cast<std::size_t>(a)] -= 1;
                    out.push_back(std::move(w));
                }
        }
        for (std::size_t i = 0; i < q.size(); ++i)
            for (const auto& leg : flavor_.legs[i])
                for (int a = 0; a < q.dims[i]; ++a) {
                    MatterWeight w{std::vector<int>(gauge_rank_, 0), leg, 1};
                    w.gauge[off[i] + static_cast<std::size_t>(a)] = -1;
                    out.push_back(std::move(w));
                }
        return aggregate(std::move(out));
    }

    /// Variable names of the cohomological ring: x1..xd, c1..cm, hbar.
    VarNames hom_names() const { return names("x", "c", "hbar"); }
    /// Variable names of the K-theoretic ring: t1..td, a1..am, q.
    VarNames k_names() const { return names("t", "a", "q"); }
    std::size_t ring_vars() const { return gauge_rank_ + flavor_rank_ + 1; }

    friend bool operator==(const GaugeTheory& a, const GaugeTheory& b) {
        return a.quiver_ == b.quiver_ && a.flavor_ == b.flavor_ && a.raw_ == b.raw_ &&
               a.gauge_rank_ == b.gauge_rank_ && a.flavor_rank_ == b.flavor_rank_ && a.nu_ == b.nu_;
    }

private:
    static std::vector<MatterWeight> aggregate(std::vector<MatterWeight> in) {
        std::vector<MatterWeight> out;
        for (auto& w : in) {
            auto it = std::find_if(out.begin(), out.end(), [&w](const MatterWeight& o) {
                return o.gauge == w.gauge && o.flavor == w.flavor;
            });
            if (it == out.end()) {
                out.push_back(std::move(w));
            } else {
                it->multiplicity += w.multiplicity;
            }
        }
        return out;
    }

    void set_nu(std::optional<std::vector<int>> nu) {
        nu_default_ = !nu.has_value();
        nu_ = nu ? std::move(*nu) : std::vector<int>(gauge_rank_, 1);
        if (nu_.size() != gauge_rank_) throw InvalidArgument("nu must have one entry per gauge coordinate");
    }

    VarNames names(const char* g, const char* f, const char* h) const {
        VarNames n;
        for (std::size_t i = 0; i < gauge_rank_; ++i) n.push_back(g + std::to_string(i + 1));
        for (std::size_t i = 0; i < flavor_rank_; ++i) n.push_back(f + std::to_string(i + 1));
        n.emplace_back(h);
        return n;
    }

    std::string name_;
    std::optional<Quiver> quiver_;
    FlavorAssignment flavor_;
    std::vector<MatterWeight> raw_;
    std::size_t gauge_rank_ = 0;
    std::size_t flavor_rank_ = 0;
    std::vector<int> nu_;
    bool nu_default_ = true;
};

inline std::vector<MatterWeight> matter_weights(const GaugeTheory& t, WeightMode mode = WeightMode::abelian_only) {
    return t.weights(mode);
}

inline int nu_weight(const GaugeTheory& t, const Cocharacter& lambda) {
    if (lambda.size() != t.gauge_rank()) throw InvalidArgument("cocharacter has wrong length");
    return pairing(t.nu(), lambda);
}

inline std::vector<int> pi1_class(const GaugeTheory& t, const Cocharacter& lambda) {
    const Quiver& q = t.quiver();
    if (lambda.size() != t.gauge_rank()) throw InvalidArgument("cocharacter has wrong length");
    auto off = t.vertex_offsets();
    std::vector<int> out(q.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t k = off[i]; k < off[i + 1]; ++k) out[i] += lambda[k];
    return out;
}

// ---------------------------------------------------------------------------
// Ready-made theories used throughout tests and the CLI.

inline GaugeTheory sqed(int w) {
    Quiver q{{"1"}, {}, {1}, {w}};
    return GaugeTheory::from_quiver(q, std::nullopt, std::nullopt, "sqed" + std::to_string(w));
}

inline GaugeTheory type_a_quiver(const std::vector<int>& dims, const std::vector<int>& framing, std::string name = {}) {
    Quiver q;
    for (std::size_t i = 0; i < dims.size(); ++i) q.vertices.push_back(std::to_string(i + 1));
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) q.arrows.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    q.dims = dims;
    q.framing = framing;
    return GaugeTheory::from_quiver(q, std::nullopt, std::nullopt, std::move(name));
}

/// Abelian A2: v = (1,1), w = (1,1), one arrow 1 -> 2.
inline GaugeTheory abelian_a2() { return type_a_quiver({1, 1}, {1, 1}, "abelian_a2"); }

inline GaugeTheory pure_torus(std::size_t rank = 1) {
    return GaugeTheory::raw(rank, 0, {}, std::nullopt, "pure_torus" + std::to_string(rank));
}

// ---------------------------------------------------------------------------
// Monopole generators from the generalized-root hyperplane arrangement.

namespace detail {

inline std::vector<int> primitive(std::vector<int> v) {
    int g = 0;
    for (int x : v) g = std::gcd(g, std::abs(x));
    if (g > 1)
        for (int& x : v) x /= g;
    return v;
}

inline std::vector<int> sign_normalized(std::vector<int> v) {
    for (int x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (int& y : v) y = -y;
        break;
    }
    return v;
}

inline int l1(const std::vector<int>& v) {
    int s = 0;
    for (int x : v) s += std::abs(x);
    return s;
}

} // namespace detail

/// Distinct hyperplanes (primitive normals up to sign) of the gauge parts of
/// the matter weights.
inline std::vector<std::vector<int>> root_hyperplanes(const GaugeTheory& t) {
    std::set<std::vector<int>> hs;
    for (const auto& w : t.weights()) {
        if (std::all_of(w.gauge.begin(), w.gauge.end(), [](int x) { return x == 0; })) continue;
        hs.insert(detail::sign_normalized(detail::primitive(w.gauge)));
    }
    return {hs.begin(), hs.end()};
}

/// Union over the chambers of the arrangement of the Hilbert bases of their
/// integral points. Exhaustive over the box [-B, B]^d with B = d times the
/// largest ray coefficient; cost is exponential in the gauge rank.
inline std::vector<Cocharacter> hilbert_basis_generators(const GaugeTheory& t) {
    const std::size_t d = t.gauge_rank();
    if (d == 0) return {};
    const auto hs = root_hyperplanes(t);

    int maxc = 1;
    if (d >= 2) {
        for (const auto& sub : linalg::subsets(hs.size(), d - 1)) {
            std::vector<std::vector<int>> rows;
            for (auto i : sub) rows.push_back(hs[i]);
            if (linalg::rank(rows) != d - 1) continue;
            for (const auto& r : linalg::integer_kernel(rows, d))
                for (long x : r) maxc = std::max(maxc, static_cast<int>(std::abs(x)));
        }
    }
    const int bound = std::max(1, static_cast<int>(d) * maxc);

    std::vector<Cocharacter> box;
    Cocharacter p(d, -bound);
    for (;;) {
        if (std::any_of(p.begin(), p.end(), [](int x) { return x != 0; })) box.push_back(p);
        std::size_t i = 0;
        while (i < d && p[i] == bound) p[i++] = -bound;
        if (i == d) break;
        ++p[i];
    }

    auto signs = [&hs](const Cocharacter& v) {
        std::vector<int> s;
        for (const auto& h : hs) {
            int x = pairing(h, v);
            s.push_back((x > 0) - (x < 0));
        }
        return s;
    };
    std::set<std::vector<int>> chambers;
    for (const auto& v : box) {
        auto s = signs(v);
        if (std::none_of(s.begin(), s.end(), [](int x) { return x == 0; })) chambers.insert(s);
    }
    if (hs.empty()) chambers.insert({});
    const bool pointed = linalg::rank(hs) == d;

    std::set<Cocharacter> found;
    for (const auto& ch : chambers) {
        auto in_cone = [&](const Cocharacter& v) {
            for (std::size_t k = 0; k < hs.size(); ++k)
                if (ch[k] * pairing(hs[k], v) < 0) return false;
            return true;
        };
        std::vector<Cocharacter> pts;
        for (const auto& v : box)
            if (in_cone(v)) pts.push_back(v);
        for (const auto& v : pts) {
            bool reducible = false;
            for (const auto& u : pts) {
                if (u == v) continue;
                Cocharacter r(d);
                for (std::size_t k = 0; k < d; ++k) r[k] = v[k] - u[k];
                if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) continue;
                if (!in_cone(r)) continue;
                if (!pointed && detail::l1(u) + detail::l1(r) != detail::l1(v)) continue;
                reducible = true;
                break;
            }
            if (!reducible) found.insert(v);
        }
    }
    std::vector<Cocharacter> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const Cocharacter& a, const Cocharacter& b) {
        int la = detail::l1(a), lb = detail::l1(b);
        if (la != lb) return la < lb;
        return a > b;
    });
    return out;
}

/// Minuscule coweights of GL_{n_1} x ... x GL_{n_r}: per block (1^k, 0^{n-k})
/// or (0^{n-k}, (-1)^k).
inline std::vector<Cocharacter> minuscule_coweights(const std::vector<int>& block_dims) {
    std::vector<std::vector<Cocharacter>> per_block;
    for (int n : block_dims) {
        if (n <= 0) throw InvalidArgument("block dimensions must be positive");
        std::vector<Cocharacter> opts;
        opts.emplace_back(static_cast<std::size_t>(n), 0);
        for (int k = 1; k <= n; ++k) {
            Cocharacter v(static_cast<std::size_t>(n), 0);
            std::fill(v.begin(), v.begin() + k, 1);
            opts.push_back(v);
        }
        for (int k = 1; k <= n; ++k) {
            Cocharacter v(static_cast<std::size_t>(n), 0);
            std::fill(v.end() - k, v.end(), -1);
            opts.push_back(v);
        }
        per_block.push_back(std::move(opts));
    }
    std::vector<Cocharacter> out{{}};
    for (const auto& opts : per_block) {
        std::vector<Cocharacter> next;
        for (const auto& prefix : out)
            for (const auto& o : opts) {
                Cocharacter v = prefix;
                v.insert(v.end(), o.begin(), o.end());
                next.push_back(std::move(v));
            }
        out = std::move(next);
    }
    return out;
}

/// Throws NotMinuscule unless each block of `lambda` has entries all in
/// {0,1} or all in {0,-1}.
inline void require_minuscule(const std::vector<int>& block_dims, const Cocharacter& lambda) {
    std::size_t pos = 0;
    for (int n : block_dims) {
        bool nonneg = true, nonpos = true;
        for (int k = 0; k < n; ++k, ++pos) {
            if (pos >= lambda.size()) throw InvalidArgument("cocharacter shorter than the block structure");
            int x = lambda[pos];
            if (x < -1 || x > 1) nonneg = nonpos = false;
            if (x == -1) nonneg = false;
            if (x == 1) nonpos = false;
        }
        if (!nonneg && !nonpos) throw NotMinuscule("cocharacter is not minuscule for its GL block");
    }
    if (pos != lambda.size()) throw InvalidArgument("cocharacter longer than the block structure");
}

} // namespace coulomb
