#pragma once

#include <cstdint>
#include <random>

#include "mcfix/equivariant.hpp"

namespace mcfix {

struct IdentityReport {
    bool ok = true;
    long checks = 0;
    std::string witness;
    void merge(const IdentityReport& o);
    std::string format(const std::string& name) const;
};

// The bar model of EG: level-n simplices are tuples (g_n,...,g_0) ∈ G^{n+1},
// stored left-to-right, with
//   d_0 (g_n,...,g_0) = (g_n,...,g_1)
//   d_i (g_n,...,g_0) = (g_n,...,g_{i+1}, g_i·g_{i-1}, g_{i-2},...,g_0)
//   s_j (g_n,...,g_0) = (g_n,...,g_j, e, g_{j-1},...,g_0)
// and G acting on the leftmost coordinate. Degeneracy insertion is indexed
// from the right so that d_j s_j = d_{j+1} s_j = id holds on the nose.
class EGComplex {
public:
    EGComplex(FiniteGroup g, int m_max, long max_cells = 5'000'000);

    const FiniteGroup& group() const { return g_; }
    int m_max() const { return m_max_; }
    long level_size(int n) const;  // |G|^{n+1}

    std::vector<int> decode(int level, long idx) const;
    long encode(const std::vector<int>& tuple) const;

    long face(int level, int i, long idx) const;        // level >= 1, 0 <= i <= level
    long degeneracy(int level, int j, long idx) const;  // 0 <= j <= level
    long act(int g, int level, long idx) const;
    bool nondegenerate(int level, long idx) const;  // no interior identity entries

    IdentityReport verify_identities() const;  // all five families + action compatibility
    IdentityReport verify_freeness() const;    // g·t = t implies g = e

private:
    FiniteGroup g_;
    int m_max_;
};

// Levelwise finite-dimensional simplicial Q-module, with every structure map
// stored as an exact matrix in a fixed cycle basis.
struct SimplicialQModule {
    int m_max = 0;

    // ambient space per level: pairs (algebra element, cell of the simplex)
    struct Ambient {
        std::vector<std::pair<BasisRef, uint32_t>> pairs;  // cell = vertex bitmask of Δ^n
        std::map<std::pair<BasisRef, uint32_t>, int> index;
    };
    std::vector<Ambient> ambient;             // degree-0 part of L ⊗ C(Δ^n)
    std::vector<std::vector<QVec>> cycles;    // cycle basis per level, ambient coordinates
    std::vector<std::vector<int>> free_cols;  // kernel chart: coordinates are read off these
    std::vector<int> dims;

    std::vector<std::vector<QMatrix>> faces;   // faces[n][i] : M_n -> M_{n-1}
    std::vector<std::vector<QMatrix>> degens;  // degens[n][j] : M_n -> M_{n+1}
    std::vector<std::vector<QMatrix>> action;  // action[g][n] (empty when no group action)

    // the abelian algebra the model was built from, kept for map sampling
    std::optional<SLAlgebra> source;
    std::optional<GroupRep> source_action;

    int dim(int level) const { return dims[level]; }
    // expresses an ambient vector in the cycle basis; nullopt if not a cycle
    std::optional<QVec> express(int level, const QVec& ambient_vec) const;
    QVec to_ambient(int level, const QVec& coords) const;
    bool invariant(int level, const QVec& coords) const;

    IdentityReport verify_identities() const;
};

// Finite cellular model of the Maurer-Cartan simplicial set of an abelian
// algebra: M_n = degree-0 cycles of L ⊗ C(Δ^n) with C the cellular cochains
// of the n-simplex. Refuses non-abelian input.
SimplicialQModule abelian_mc_model(const SLAlgebra& l, int m_max, const GroupRep* action = nullptr);

// G-simplicial map EG → M as levelwise value tables (cycle-basis coordinates).
struct GSimplicialMap {
    const EGComplex* eg = nullptr;
    const SimplicialQModule* m = nullptr;
    std::vector<std::vector<QVec>> values;  // [level][tuple index]

    const QVec& at(int level, long idx) const { return values[level][idx]; }
    IdentityReport verify_simplicial() const;
    IdentityReport verify_equivariant() const;
    bool operator==(const GSimplicialMap& o) const { return values == o.values; }
};

// Deterministic sample of equivariant simplicial maps EG → M: invariant
// coboundary cocycles pulled back along simplices, plus the zero map.
std::vector<GSimplicialMap> sample_equivariant_maps(const EGComplex& eg, const SimplicialQModule& m,
                                                    int count, unsigned seed);

// f^Σ: the constant map at the average of f over (σ, e, ..., e).
GSimplicialMap averaged_symmetrization(const GSimplicialMap& f);

// G-simplicial map EG × Δ¹ → M; the Δ¹ simplex at level m is recorded by its
// number of leading zeros k ∈ {0,...,m+1}.
struct CylinderMap {
    const EGComplex* eg = nullptr;
    const SimplicialQModule* m = nullptr;
    std::vector<std::vector<std::vector<QVec>>> values;  // [level][tuple][k]

    IdentityReport verify_simplicial() const;
    IdentityReport verify_equivariant() const;
};

// H(f): the homotopy f^Σ ≃ f, H((g_m,...,g_0), [0^k 1^{m+1-k}]) =
// (1/|G|) Σ_σ f(g_m,...,g_k,σ,e,...,e).
CylinderMap homotopy_h(const GSimplicialMap& f);

// endpoint identities H(-,0) = f^Σ and H(-,1) = f, exact
IdentityReport verify_h_endpoints(const CylinderMap& h, const GSimplicialMap& f);

// n-simplex of Map_G(Δ^n × EG, M): tables over (σ, tuple) per level, where σ
// runs over the monotone maps [level] → [n].
struct MapSimplex {
    int n = 0;
    const EGComplex* eg = nullptr;
    const SimplicialQModule* m = nullptr;
    std::vector<std::vector<std::vector<int>>> sigmas;          // [level][idx] -> monotone sequence
    std::vector<std::map<std::vector<int>, int>> sigma_index;   // per level
    std::vector<std::vector<std::vector<QVec>>> values;         // [level][sigma][tuple]

    static MapSimplex empty(int n, const EGComplex& eg, const SimplicialQModule& m);
    const QVec& at(int level, int sigma, long tuple) const { return values[level][sigma][tuple]; }
    IdentityReport verify_simplicial() const;  // joint faces/degeneracies on Δ^n × EG
    IdentityReport verify_equivariant() const;
    bool operator==(const MapSimplex& o) const { return values == o.values; }
};

std::vector<MapSimplex> sample_map_simplices(int n, const EGComplex& eg, const SimplicialQModule& m,
                                             int count, unsigned seed);

// n-simplex of Map(Δ^n, M): the image of the retraction.
struct DeltaMapSimplex {
    int n = 0;
    const SimplicialQModule* m = nullptr;
    std::vector<std::vector<std::vector<int>>> sigmas;
    std::vector<std::map<std::vector<int>, int>> sigma_index;
    std::vector<std::vector<QVec>> values;  // [level][sigma]

    IdentityReport verify_simplicial() const;
    IdentityReport verify_invariant() const;
    bool operator==(const DeltaMapSimplex& o) const { return values == o.values; }
};

// p(f)(σ) = (1/|G|) Σ_g f(σ, (g, e, ..., e)); refuses non-equivariant f.
DeltaMapSimplex retraction_p(const MapSimplex& f);

// i(h)(σ, t) = h(σ): inclusion along the collapse EG → *.
MapSimplex inclusion_i(const DeltaMapSimplex& h, const EGComplex& eg);

// K_n(f, τ)(σ, t) = H_{f(σ,-)}(t, σ*τ) with τ given by its zero count in Δ¹_n.
MapSimplex homotopy_k(const MapSimplex& f, int tau_zeros);

// mapping-space faces/degeneracies: f ∘ (δ^i × id) and f ∘ (σ^j × id)
MapSimplex map_simplex_face(const MapSimplex& f, int i);
MapSimplex map_simplex_degeneracy(const MapSimplex& f, int j);

// One verification line of the retraction suite.
struct SuiteLine {
    std::string name;
    bool ok;
    long checks;
    std::string witness;
};

struct RetractionOptions {
    int m_max = 3;
    int map_simplex_dim = 2;  // K is verified for n <= this
    int samples = 3;
    unsigned seed = 20240915;
    bool inject_h_fault = false;  // flips one H value to demonstrate detection
    long max_cells = 5'000'000;
};

// Runs the whole Step-1 verification: EG identities and freeness, the
// simplicial module identity suite, equivariance and endpoints of H,
// p∘i = id, invariance of p, endpoints and simpliciality of K.
std::vector<SuiteLine> verify_retraction(const FiniteGroup& g, const SLAlgebra& target,
                                         const GroupRep* target_action, const RetractionOptions& opt);

}  // namespace mcfix
