#pragma once

// Ring-level classification: minimal injective resolutions of the regular
// module, flat-dimension sequences, quasi-k-Gorenstein and k-Gorenstein
// verdicts, and grade-condition spot checks.
//
// Flat dimension is computed as projective dimension; for finitely
// generated modules over either backend these coincide.  Terms are indexed
// I_1, I_2, ... so the quasi-k-Gorenstein inequality reads fd(I_i) <= i.

#include "halg/constructions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace halg {

struct InjectiveTermReport {
    ModInvariant invariant;
    bool zero = false;
    bool essential = false;     // envelope certificate at this step
    std::optional<CapValue> fd; // empty for zero terms
};

struct GorensteinReport {
    int k = 0;
    int cap = 8;
    bool capability = true; // false: backend cannot compute injectives
    std::string note;
    std::vector<InjectiveTermReport> terms; // I_1 .. I_k
    bool quasi_k_gorenstein = false;
    bool k_gorenstein = false;
    std::optional<int> inconclusive_at; // pd cap exceeded at this term
};

struct MinInjectiveResolution {
    std::vector<QMod> terms;     // I_1 .. I_k (right modules)
    std::vector<QMap> maps;      // Lambda -> I_1, coker -> I_2 embeddings
    std::vector<bool> essential; // envelope certificates
};

// Minimal injective resolution of Lambda as a right module over `ring`,
// i.e. of the free rank-one left module over ring->opposite().
inline MinInjectiveResolution min_injective_resolution(
    const std::shared_ptr<const QuiverAlgebra>& ring, int k)
{
    MinInjectiveResolution out;
    QMod cur = QMod::free_module(ring->opposite(), Side::Right, 1);
    for (int i = 1; i <= k; ++i) {
        if (is_zero(cur)) {
            out.terms.push_back(QMod::zero_module(ring->opposite(), Side::Right));
            out.essential.push_back(true);
            continue;
        }
        EnvelopeData env = fd_injective_envelope(cur);
        out.terms.push_back(env.I);
        out.maps.push_back(env.mono);
        out.essential.push_back(env.essential);
        cur = cokernel(env.mono).module;
    }
    return out;
}

inline GorensteinReport classify(const std::shared_ptr<const QuiverAlgebra>& ring, int k,
                                 int cap)
{
    if (k < 1) throw Error(ErrorKind::MalformedInput, "classify: k must be >= 1");
    GorensteinReport rep;
    rep.k = k;
    rep.cap = cap;
    MinInjectiveResolution mir = min_injective_resolution(ring, k);
    bool quasi = true, strict = true;
    for (int i = 1; i <= k; ++i) {
        InjectiveTermReport tr;
        const QMod& I = mir.terms[i - 1];
        tr.invariant = invariant_of(I);
        tr.zero = is_zero(I);
        tr.essential = mir.essential[i - 1];
        if (!tr.zero) {
            CapValue pd = projective_dimension(I, cap);
            tr.fd = pd;
            if (pd.exceeded) {
                rep.inconclusive_at = i;
            } else {
                if (pd.value > i) quasi = false;
                if (pd.value > i - 1) strict = false;
            }
        }
        rep.terms.push_back(std::move(tr));
    }
    if (rep.inconclusive_at)
        throw Error(ErrorKind::Inconclusive,
                    "classify: projective dimension of term " +
                        std::to_string(*rep.inconclusive_at) + " exceeds cap " +
                        std::to_string(cap));
    rep.quasi_k_gorenstein = quasi;
    rep.k_gorenstein = strict;
    return rep;
}

// The integer backend has no finitely generated injectives; its Gorenstein
// status is asserted from theory, not computed.
inline GorensteinReport classify_integers(int k)
{
    GorensteinReport rep;
    rep.k = k;
    rep.capability = false;
    rep.note = "injective resolution unavailable over the integers; the ring is "
               "1-Gorenstein (hence quasi k-Gorenstein and k-Gorenstein for every k) "
               "by theory, not by computation";
    rep.quasi_k_gorenstein = true;
    rep.k_gorenstein = true;
    return rep;
}

// ---------------------------------------------------------------------------
// Grade spot checks (Lemma 2.2 / Corollary 2.3 instances).

template <class R>
struct SpotCheckViolation {
    std::string which; // "grade" or "torsionfree"
    int sample = 0;    // index into the sample list
    int index = 0;     // the i at which the inequality failed
    std::string detail;
};

template <class R>
struct SpotCheckReport {
    int k = 0;
    int samples = 0;
    std::vector<FPModule<R>> sample_modules;
    std::vector<SpotCheckViolation<R>> violations;
    bool clean() const { return violations.empty(); }
};

template <class R>
SpotCheckReport<R> grade_spotcheck(const std::vector<FPModule<R>>& samples, int k)
{
    SpotCheckReport<R> rep;
    rep.k = k;
    rep.samples = static_cast<int>(samples.size());
    rep.sample_modules = samples;
    for (size_t s = 0; s < samples.size(); ++s) {
        const FPModule<R>& N = samples[s];
        Resolution<R> res = resolution(N, k + 2);
        for (int i = 1; i <= k - 1; ++i) {
            auto e = ext_from_resolution(res, i + 1).value;
            CapValue g = grade(e, i);
            if (!g.ge(i))
                rep.violations.push_back(SpotCheckViolation<R>{
                    "grade", static_cast<int>(s), i,
                    "grade Ext^" + std::to_string(i + 1) + " = " + g.str() + " < " +
                        std::to_string(i)});
        }
        for (int i = 1; i <= k; ++i) {
            auto sy = syzygy_of(res, i).module;
            int tf = torsionfree_level(sy, i);
            if (tf < i)
                rep.violations.push_back(SpotCheckViolation<R>{
                    "torsionfree", static_cast<int>(s), i,
                    "torsionfree_level(syzygy^" + std::to_string(i) + ") = " +
                        std::to_string(tf) + " < " + std::to_string(i)});
        }
    }
    return rep;
}

// Default sample corpus for an fd backend: all simples, all indecomposable
// projectives, all radicals of projectives, on the given side.
inline std::vector<QMod> default_spotcheck_samples(
    const std::shared_ptr<const QuiverAlgebra>& ring, Side side)
{
    auto inst = side == Side::Left ? ring : ring->opposite();
    std::vector<QMod> out;
    for (int v = 0; v < inst->num_vertices(); ++v) {
        QMod P = fd_projective_indec(inst, v);
        P.side = side;
        out.push_back(P);
        // simple top: one generator, relations = radical annihilator rows
        Mat<QuiverAlgebra> col(inst, 1, 1);
        col.at(0, 0) = inst->idempotent(v);
        Mat<QuiverAlgebra> ann = kernel_left(col);
        Mat<QuiverAlgebra> rad(inst, 0, 1);
        for (int c : inst->core().radical_classes) {
            Mat<QuiverAlgebra> row(inst, 1, 1);
            row.at(0, 0) = inst->basis_elem(c);
            rad = mat_vstack(rad, row);
        }
        QMod S(inst, side, basis_rows(mat_vstack(ann, rad)));
        out.push_back(S);
        // radical of the projective: generated by arrow multiples of e_v
        auto F = flatten_module(P);
        FpEchelon radspan = fd_radical_span(F);
        Mat<QuiverAlgebra> gens(inst, 0, P.gens());
        for (const auto& row : radspan.rows) {
            std::vector<uint32_t> flat(static_cast<size_t>(F.gens) * inst->dim(), 0);
            for (int q = 0; q < F.dim; ++q)
                flat[static_cast<size_t>(F.qcoords[q].first) * inst->dim() +
                     F.qcoords[q].second] = row[q];
            gens = mat_vstack(gens, F.unflatten(flat));
        }
        gens = prune_generators(gens, P.rel);
        QMod RadP(inst, side, relative_syzygies(gens, P.rel));
        out.push_back(RadP);
    }
    return out;
}

} // namespace halg
