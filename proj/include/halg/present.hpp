#pragma once

// Presentation normalization and isomorphism invariants.
//
// Over the integers the canonical decomposition is a complete isomorphism
// invariant.  Over a finite-dimensional algebra modules are compared by
// dimension data (total dimension and the dimension vector); this is the
// invariant comparison the certificates use, not a full isomorphism test.

#include "halg/fdmodule.hpp"
#include "halg/module.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace halg {

// ---------------------------------------------------------------------------
// Canonical decomposition (integer backend)

struct CanonicalDecomposition {
    long rank = 0;
    std::vector<mpz_class> factors; // invariant factors > 1, divisibility chain

    bool operator==(const CanonicalDecomposition& o) const
    {
        return rank == o.rank && factors == o.factors;
    }
    std::string str() const
    {
        std::ostringstream s;
        s << "rank " << rank << ", factors [";
        for (size_t i = 0; i < factors.size(); ++i)
            s << (i ? ", " : "") << factors[i].get_str();
        s << "]";
        return s.str();
    }
};

inline CanonicalDecomposition canonical_decomposition(const FPModule<ZRing>& M)
{
    ZMat rel(M.rel.rows, M.rel.cols);
    for (int i = 0; i < rel.rows; ++i)
        for (int j = 0; j < rel.cols; ++j) rel.at(i, j) = M.rel.at(i, j);
    auto diag = zmat_smith_diagonal(rel);
    CanonicalDecomposition out;
    long nonzero = 0;
    for (const auto& d : diag) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) out.factors.push_back(d);
    }
    out.rank = M.gens() - nonzero;
    return out;
}

// ---------------------------------------------------------------------------
// Zero / projective tests

inline bool is_zero(const FPModule<ZRing>& M)
{
    auto d = canonical_decomposition(M);
    return d.rank == 0 && d.factors.empty();
}

inline bool is_zero(const FPModule<QuiverAlgebra>& M)
{
    return M.gens() == 0 || fd_dim(M) == 0;
}

inline bool is_projective(const FPModule<ZRing>& M)
{
    return canonical_decomposition(M).factors.empty(); // free iff torsion-free
}

inline bool is_projective(const FPModule<QuiverAlgebra>& M) { return fd_is_projective(M); }

// ---------------------------------------------------------------------------
// Minimal presentations, with the isomorphisms to and from the original

template <class R>
struct MinPresData {
    FPModule<R> module;
    ModuleMap<R> to_min, from_min;
};

inline MinPresData<ZRing> minimal_presentation_data(const FPModule<ZRing>& M)
{
    ZMat rel(M.rel.rows, M.rel.cols);
    for (int i = 0; i < rel.rows; ++i)
        for (int j = 0; j < rel.cols; ++j) rel.at(i, j) = M.rel.at(i, j);
    ZSmith s = zmat_smith(rel);
    int g = M.gens();
    int lim = std::min(rel.rows, rel.cols);
    // keep the generators whose diagonal entry is not a unit
    std::vector<int> kept;
    std::vector<mpz_class> diag(g, 0);
    for (int j = 0; j < lim; ++j) diag[j] = s.S.at(j, j);
    for (int j = 0; j < g; ++j)
        if (diag[j] != 1) kept.push_back(j);
    Mat<ZRing> newrel(M.ring, 0, static_cast<int>(kept.size()));
    for (size_t k = 0; k < kept.size(); ++k) {
        if (diag[kept[k]] == 0) continue;
        Mat<ZRing> row(M.ring, 1, static_cast<int>(kept.size()));
        row.at(0, static_cast<int>(k)) = diag[kept[k]];
        newrel = mat_vstack(newrel, row);
    }
    FPModule<ZRing> Mmin(M.ring, M.side, newrel);
    // coker(rel) ~ coker(S) by y -> y*V^{-1}
    ZMat vinv;
    {
        auto x = zmat_solve_left(zmat_transpose(s.V), ZMat::identity(g));
        if (!x) throw Error(ErrorKind::Internal, "minimal presentation: V not invertible");
        vinv = zmat_transpose(*x); // V * vinv = I
    }
    Mat<ZRing> to(M.ring, g, static_cast<int>(kept.size()));
    for (int i = 0; i < g; ++i)
        for (size_t k = 0; k < kept.size(); ++k) to.at(i, static_cast<int>(k)) = s.V.at(i, kept[k]);
    Mat<ZRing> from(M.ring, static_cast<int>(kept.size()), g);
    for (size_t k = 0; k < kept.size(); ++k)
        for (int j = 0; j < g; ++j) from.at(static_cast<int>(k), j) = vinv.at(kept[k], j);
    return MinPresData<ZRing>{Mmin, ModuleMap<ZRing>(M, Mmin, to), ModuleMap<ZRing>(Mmin, M, from)};
}

inline MinPresData<QuiverAlgebra> minimal_presentation_data(const FPModule<QuiverAlgebra>& M)
{
    auto mp = fd_minimal_presentation(M);
    return MinPresData<QuiverAlgebra>{mp.module, mp.to_min, mp.from_min};
}

template <class R>
FPModule<R> minimal_presentation(const FPModule<R>& M)
{
    return minimal_presentation_data(M).module;
}

// ---------------------------------------------------------------------------
// Isomorphism invariants used by certificates

struct ModInvariant {
    std::string backend;
    long rank = 0;                    // integers: free rank; fd: total dimension
    std::vector<std::string> factors; // integers only
    std::vector<int> dimvec;          // fd only: dim e_v * M per vertex

    bool operator==(const ModInvariant& o) const
    {
        return backend == o.backend && rank == o.rank && factors == o.factors &&
               dimvec == o.dimvec;
    }
    std::string str() const
    {
        std::ostringstream s;
        if (backend == "integers") {
            s << "Z^" << rank;
            for (const auto& f : factors) s << " + Z/" << f;
        } else {
            s << "dim " << rank << " [";
            for (size_t i = 0; i < dimvec.size(); ++i) s << (i ? "," : "") << dimvec[i];
            s << "]";
        }
        return s.str();
    }
};

inline ModInvariant invariant_of(const FPModule<ZRing>& M)
{
    auto d = canonical_decomposition(M);
    ModInvariant inv;
    inv.backend = "integers";
    inv.rank = d.rank;
    for (const auto& f : d.factors) inv.factors.push_back(f.get_str());
    return inv;
}

inline ModInvariant invariant_of(const FPModule<QuiverAlgebra>& M)
{
    ModInvariant inv;
    inv.backend = "bound_quiver";
    inv.rank = fd_dim(M);
    inv.dimvec = fd_dim_vector(M);
    return inv;
}

template <class R>
bool invariants_match(const FPModule<R>& A, const FPModule<R>& B)
{
    return invariant_of(A) == invariant_of(B);
}

} // namespace halg
