#pragma once

// JSON serialization: ring files, module files, certificates and reports.
//
// Canonical form: nlohmann::json keeps object keys sorted, all numbers are
// integers, and element entries are printed deterministically.  Matrices
// over an opposite ring instance are written in the primary ring's notation
// (the module's side field records the flip), so files round-trip through
// the primary parser.

#include "halg/constructions.hpp"
#include "halg/gorenstein.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <string>
#include <variant>

namespace halg {

using json = nlohmann::json;

inline uint64_t fnv1a64(const std::string& s)
{
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_of(const json& j)
{
    char buf[32];
    snprintf(buf, sizeof buf, "fnv1a:%016llx",
             static_cast<unsigned long long>(fnv1a64(j.dump())));
    return buf;
}

// ---------------------------------------------------------------------------
// Rings

inline std::shared_ptr<const ZRing> primary_of(const std::shared_ptr<const ZRing>& r)
{
    return r;
}
inline std::shared_ptr<const QuiverAlgebra>
primary_of(const std::shared_ptr<const QuiverAlgebra>& r)
{
    return r->reversed() ? r->opposite() : r;
}

inline json ring_to_json(const std::shared_ptr<const ZRing>&)
{
    return json{{"type", "integers"}};
}

inline json ring_to_json(const std::shared_ptr<const QuiverAlgebra>& r)
{
    const QuiverCore& c = primary_of(r)->core();
    if (c.trusted_radical) {
        json table = json::array();
        for (int i = 0; i < c.dim; ++i) {
            json row = json::array();
            for (int j = 0; j < c.dim; ++j) row.push_back(c.prod(i, j));
            table.push_back(std::move(row));
        }
        json idem = json::array();
        for (int v : c.vertex_class) idem.push_back(v);
        json rad = json::array();
        for (int v : c.radical_classes) rad.push_back(v);
        return json{{"dim", c.dim},
                    {"idempotents", idem},
                    {"labels", c.basis_labels},
                    {"p", c.p},
                    {"radical_basis", rad},
                    {"table", table},
                    {"trusted_radical", true},
                    {"type", "structure_constants"}};
    }
    json arrows = json::array();
    for (const auto& a : c.arrows)
        arrows.push_back(json{{"from", c.vertices[a.from]},
                              {"name", a.name},
                              {"to", c.vertices[a.to]}});
    return json{{"arrows", arrows},
                {"nilpotency_bound", c.bound},
                {"p", c.p},
                {"relations", c.relation_exprs},
                {"type", "bound_quiver"},
                {"vertices", c.vertices}};
}

using RingHandle =
    std::variant<std::shared_ptr<const ZRing>, std::shared_ptr<const QuiverAlgebra>>;

// Rings are cached by their canonical serialization so that repeated loads
// of the same description share one backend instance (RingId semantics).
class RingRegistry {
public:
    static RingRegistry& global()
    {
        static RingRegistry reg;
        return reg;
    }

    RingHandle load(const json& spec)
    {
        if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
            throw Error(ErrorKind::MalformedInput, "ring file needs a \"type\" field");
        std::string type = spec["type"];
        if (type == "integers") return ZRing::instance();
        if (type == "structure_constants") {
            StructureConstantsSpec sc = parse_sc_spec(spec);
            auto alg = build_structure_constants(sc);
            std::string key = ring_to_json(alg).dump();
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
            cache_.emplace(key, alg);
            return alg;
        }
        if (type != "bound_quiver")
            throw Error(ErrorKind::MalformedInput, "unknown ring type: " + type);
        QuiverSpec qs = parse_quiver_spec(spec);
        json canon = canonical_quiver_json(qs);
        std::string key = canon.dump();
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        auto alg = QuiverAlgebra::build(qs);
        cache_.emplace(key, alg);
        return alg;
    }

    static StructureConstantsSpec parse_sc_spec(const json& spec)
    {
        StructureConstantsSpec sc;
        try {
            sc.p = spec.at("p").get<uint32_t>();
            sc.dim = spec.at("dim").get<int>();
            sc.labels = spec.at("labels").get<std::vector<std::string>>();
            for (const auto& row : spec.at("table")) {
                std::vector<std::vector<uint32_t>> r;
                for (const auto& ent : row) r.push_back(ent.get<std::vector<uint32_t>>());
                sc.table.push_back(std::move(r));
            }
            sc.idempotents = spec.at("idempotents").get<std::vector<int>>();
            sc.radical_basis = spec.at("radical_basis").get<std::vector<int>>();
            if (spec.contains("trusted_radical"))
                sc.trusted_radical = spec.at("trusted_radical").get<bool>();
        } catch (const json::exception& e) {
            throw Error(ErrorKind::MalformedInput, std::string("bad ring file: ") + e.what());
        }
        return sc;
    }

    static QuiverSpec parse_quiver_spec(const json& spec)
    {
        QuiverSpec qs;
        try {
            qs.p = spec.at("p").get<uint32_t>();
            for (const auto& v : spec.at("vertices")) qs.vertices.push_back(v.get<std::string>());
            for (const auto& a : spec.at("arrows")) {
                QuiverArrow ar;
                ar.name = a.at("name").get<std::string>();
                std::string from = a.at("from").get<std::string>();
                std::string to = a.at("to").get<std::string>();
                ar.from = ar.to = -1;
                for (size_t i = 0; i < qs.vertices.size(); ++i) {
                    if (qs.vertices[i] == from) ar.from = static_cast<int>(i);
                    if (qs.vertices[i] == to) ar.to = static_cast<int>(i);
                }
                if (ar.from < 0 || ar.to < 0)
                    throw Error(ErrorKind::MalformedInput,
                                "arrow endpoint names an unknown vertex");
                qs.arrows.push_back(ar);
            }
            if (spec.contains("relations"))
                for (const auto& r : spec.at("relations")) qs.relations.push_back(r.get<std::string>());
            if (spec.contains("nilpotency_bound"))
                qs.nilpotency_bound = spec.at("nilpotency_bound").get<int>();
        } catch (const json::exception& e) {
            throw Error(ErrorKind::MalformedInput, std::string("bad ring file: ") + e.what());
        }
        return qs;
    }

private:
    static json canonical_quiver_json(const QuiverSpec& qs)
    {
        json arrows = json::array();
        for (const auto& a : qs.arrows)
            arrows.push_back(json{{"from", qs.vertices[a.from]},
                                  {"name", a.name},
                                  {"to", qs.vertices[a.to]}});
        return json{{"arrows", arrows},
                    {"nilpotency_bound", effective_nilpotency_bound(qs)},
                    {"p", qs.p},
                    {"relations", qs.relations},
                    {"type", "bound_quiver"},
                    {"vertices", qs.vertices}};
    }

    std::map<std::string, RingHandle> cache_;
};

// ---------------------------------------------------------------------------
// Elements, matrices, modules

template <class R>
std::string elem_str(const std::shared_ptr<const R>& inst, const typename R::Elem& e)
{
    return primary_of(inst)->to_string(e);
}

template <class R>
typename R::Elem elem_parse(const std::shared_ptr<const R>& inst, const std::string& s)
{
    // coordinates are shared between an instance and its opposite
    return primary_of(inst)->parse(s);
}

template <class R>
json mat_to_json(const Mat<R>& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(elem_str(m.ring, m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"cols", m.cols}, {"entries", rows}, {"rows", m.rows}};
}

template <class R>
Mat<R> mat_from_json(const std::shared_ptr<const R>& inst, const json& j)
{
    try {
        int r = j.at("rows").get<int>(), c = j.at("cols").get<int>();
        Mat<R> m(inst, r, c);
        const json& rows = j.at("entries");
        if (static_cast<int>(rows.size()) != r)
            throw Error(ErrorKind::MalformedInput, "matrix row count mismatch");
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c)
                throw Error(ErrorKind::MalformedInput, "matrix column count mismatch");
            for (int k = 0; k < c; ++k)
                m.at(i, k) = elem_parse(inst, rows[i][k].get<std::string>());
        }
        return m;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("bad matrix: ") + e.what());
    }
}

template <class R>
json module_to_json(const FPModule<R>& M)
{
    json rel = json::array();
    for (int i = 0; i < M.rel.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < M.rel.cols; ++j) row.push_back(elem_str(M.ring, M.rel.at(i, j)));
        rel.push_back(std::move(row));
    }
    return json{{"generators", M.gens()},
                {"relations", rel},
                {"ring", ring_to_json(M.ring)},
                {"side", side_name(M.side)}};
}

template <class R>
FPModule<R> module_from_json(const std::shared_ptr<const R>& primary, const json& j)
{
    try {
        if (j.contains("ring")) {
            RingHandle h = RingRegistry::global().load(j.at("ring"));
            auto* p = std::get_if<std::shared_ptr<const R>>(&h);
            if (!p || ring_to_json(primary_of(*p)) != ring_to_json(primary_of(primary)))
                throw Error(ErrorKind::MixedRings,
                            "module file names a different ring than the operation");
        }
        Side side = Side::Left;
        if (j.contains("side")) {
            std::string s = j.at("side").get<std::string>();
            if (s == "right") side = Side::Right;
            else if (s != "left")
                throw Error(ErrorKind::MalformedInput, "side must be \"left\" or \"right\"");
        }
        auto inst = side == Side::Right ? primary->opposite() : primary;
        int gens = j.at("generators").get<int>();
        if (gens < 0) throw Error(ErrorKind::MalformedInput, "negative generator count");
        const json& rel = j.contains("relations") ? j.at("relations") : json::array();
        Mat<R> m(inst, static_cast<int>(rel.size()), gens);
        for (size_t i = 0; i < rel.size(); ++i) {
            if (static_cast<int>(rel[i].size()) != gens)
                throw Error(ErrorKind::MalformedInput,
                            "relation row length differs from generator count");
            for (int k = 0; k < gens; ++k)
                m.at(static_cast<int>(i), k) = elem_parse(inst, rel[i][k].get<std::string>());
        }
        return FPModule<R>(inst, side, m);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("bad module file: ") + e.what());
    }
}

inline json invariant_to_json(const ModInvariant& inv)
{
    return json{{"backend", inv.backend},
                {"dimension_vector", inv.dimvec},
                {"factors", inv.factors},
                {"rank", inv.rank}};
}

inline json capvalue_to_json(const CapValue& v)
{
    return json{{"exceeded", v.exceeded}, {"value", v.value}};
}

// ---------------------------------------------------------------------------
// Certificates

template <class R>
json resolution_to_json(const Resolution<R>& res)
{
    json maps = json::array();
    for (const auto& m : res.maps) maps.push_back(mat_to_json(m));
    return json{{"maps", maps},
                {"minimal", res.minimal},
                {"module", module_to_json(res.module)},
                {"ranks", res.ranks}};
}

template <class R>
Resolution<R> resolution_from_json(const std::shared_ptr<const R>& primary, const json& j)
{
    Resolution<R> res;
    res.module = module_from_json(primary, j.at("module"));
    res.ranks = j.at("ranks").get<std::vector<int>>();
    res.minimal = j.at("minimal").get<bool>();
    for (const auto& m : j.at("maps")) res.maps.push_back(mat_from_json(res.module.ring, m));
    return res;
}

inline json theorem_checks_to_json(const TheoremChecks& c)
{
    return json{{"b_syzygy", c.b_syzygy},
                {"dual_exact", c.dual_exact},
                {"exact", c.exact},
                {"grade_K", c.grade_K},
                {"k_matches_ext", c.k_matches_ext},
                {"pd_Bstar", c.pd_Bstar},
                {"tf_C", c.tf_C}};
}

template <class R>
json theorem_cert_to_json(const TheoremCert<R>& c)
{
    return json{{"B", module_to_json(c.B)},
                {"C", module_to_json(c.C)},
                {"K", module_to_json(c.K)},
                {"P", module_to_json(c.P)},
                {"alpha", mat_to_json(c.alpha)},
                {"beta", mat_to_json(c.beta)},
                {"checks", theorem_checks_to_json(c.checks)},
                {"d", c.d},
                {"module", module_to_json(c.M)},
                {"resK", resolution_to_json(c.resK)},
                {"type", "theorem_certificate"}};
}

template <class R>
TheoremCert<R> theorem_cert_from_json(const std::shared_ptr<const R>& primary, const json& j)
{
    TheoremCert<R> c;
    c.M = module_from_json(primary, j.at("module"));
    c.d = j.at("d").get<int>();
    c.P = module_from_json(primary, j.at("P"));
    c.B = module_from_json(primary, j.at("B"));
    c.C = module_from_json(primary, j.at("C"));
    c.K = module_from_json(primary, j.at("K"));
    c.alpha = mat_from_json(c.B.ring, j.at("alpha"));
    c.beta = mat_from_json(c.M.ring, j.at("beta"));
    c.resK = resolution_from_json(primary, j.at("resK"));
    const json& ck = j.at("checks");
    c.checks.exact = ck.at("exact").get<bool>();
    c.checks.dual_exact = ck.at("dual_exact").get<bool>();
    c.checks.tf_C = ck.at("tf_C").get<bool>();
    c.checks.pd_Bstar = ck.at("pd_Bstar").get<bool>();
    c.checks.grade_K = ck.at("grade_K").get<bool>();
    c.checks.b_syzygy = ck.at("b_syzygy").get<bool>();
    c.checks.k_matches_ext = ck.at("k_matches_ext").get<bool>();
    return c;
}

template <class R>
json lemma21_to_json(const FPModule<R>& M, const Lemma21Data<R>& l)
{
    return json{{"E1", module_to_json(l.e1.module)},
                {"E2", module_to_json(l.e2.module)},
                {"Mss", module_to_json(l.eval.ddstar.dual)},
                {"checks",
                 json{{"exact_at_E1", l.exact_at_e1},
                      {"exact_at_E2", l.exact_at_e2},
                      {"exact_at_M", l.exact_at_m},
                      {"exact_at_Mss", l.exact_at_mss},
                      {"ext1_matches", l.ext1_matches},
                      {"ext2_matches", l.ext2_matches},
                      {"sigma_is_eval", true}}},
                {"incl", mat_to_json(l.e1.incl.mx)},
                {"module", module_to_json(M)},
                {"proj", mat_to_json(l.e2.proj.mx)},
                {"sigma", mat_to_json(l.eval.sigma.mx)},
                {"type", "lemma21_certificate"}};
}

template <class R>
json chain_step_to_json(const ChainStep<R>& st)
{
    return json{{"B", module_to_json(st.cert.B)},
                {"Md", module_to_json(st.Md)},
                {"Mnext", module_to_json(st.Mnext)},
                {"checks",
                 json{{"alt_ext_match", st.alt_ext_match},
                      {"dual_exact", st.dual_exact},
                      {"step_exact", st.step_exact},
                      {"tf_Md", st.tf_Md},
                      {"transport_match", st.transport_match}}},
                {"epi", mat_to_json(st.epi)},
                {"kernel_incl", mat_to_json(st.kernel_incl)},
                {"theorem", theorem_cert_to_json(st.cert)}};
}

template <class R>
json chain_cert_to_json(const ChainCert<R>& c)
{
    json steps = json::array();
    for (const auto& s : c.steps) steps.push_back(chain_step_to_json(s));
    return json{{"P", module_to_json(c.P)},
                {"k", c.k},
                {"module", module_to_json(c.M)},
                {"steps", steps},
                {"type", "chain_certificate"}};
}

template <class R>
ChainCert<R> chain_cert_from_json(const std::shared_ptr<const R>& primary, const json& j)
{
    ChainCert<R> c;
    c.M = module_from_json(primary, j.at("module"));
    c.k = j.at("k").get<int>();
    c.P = module_from_json(primary, j.at("P"));
    for (const auto& sj : j.at("steps")) {
        ChainStep<R> st;
        st.cert = theorem_cert_from_json(primary, sj.at("theorem"));
        st.Md = module_from_json(primary, sj.at("Md"));
        st.Mnext = module_from_json(primary, sj.at("Mnext"));
        st.epi = mat_from_json(st.Md.ring, sj.at("epi"));
        st.kernel_incl = mat_from_json(st.Md.ring, sj.at("kernel_incl"));
        const json& ck = sj.at("checks");
        st.step_exact = ck.at("step_exact").get<bool>();
        st.dual_exact = ck.at("dual_exact").get<bool>();
        st.transport_match = ck.at("transport_match").get<bool>();
        st.alt_ext_match = ck.at("alt_ext_match").get<bool>();
        st.tf_Md = ck.at("tf_Md").get<bool>();
        c.steps.push_back(std::move(st));
    }
    return c;
}

template <class R>
json stable_check_to_json(const StableHomCheckResult<R>& r)
{
    return json{{"H", module_to_json(r.H)},
                {"H_invariant", invariant_to_json(r.h_invariant)},
                {"from",
                 json{{"factors", r.from.factors}, {"rank", r.from.rank}}},
                {"iso", r.iso},
                {"pd_ok", r.pd_ok},
                {"to", json{{"factors", r.to.factors}, {"rank", r.to.rank}}}};
}

template <class R>
json approx_cert_to_json(const ApproxCert<R>& c)
{
    json stables = json::array();
    for (const auto& s : c.stable_checks) stables.push_back(stable_check_to_json(s));
    return json{{"P", module_to_json(c.P)},
                {"T", module_to_json(c.T)},
                {"Tss", module_to_json(c.Tss)},
                {"X", module_to_json(c.X)},
                {"Y", module_to_json(c.Y)},
                {"alpha", mat_to_json(c.alpha)},
                {"beta", mat_to_json(c.beta)},
                {"checks",
                 json{{"dual_exact", c.dual_exact},
                      {"exact", c.exact},
                      {"ext_iso", c.ext_iso},
                      {"pd_Y", capvalue_to_json(c.pd_Y)},
                      {"pd_ok", c.pd_ok},
                      {"stable", stables}}},
                {"comparison", mat_to_json(c.comparison)},
                {"k", c.k},
                {"middle", module_to_json(c.middle)},
                {"type", "approx_certificate"}};
}

template <class R>
ApproxCert<R> approx_cert_from_json(const std::shared_ptr<const R>& primary, const json& j)
{
    ApproxCert<R> c;
    c.T = module_from_json(primary, j.at("T"));
    c.k = j.at("k").get<int>();
    c.Tss = module_from_json(primary, j.at("Tss"));
    c.X = module_from_json(primary, j.at("X"));
    c.Y = module_from_json(primary, j.at("Y"));
    c.P = module_from_json(primary, j.at("P"));
    c.middle = module_from_json(primary, j.at("middle"));
    c.alpha = mat_from_json(c.X.ring, j.at("alpha"));
    c.beta = mat_from_json(c.X.ring, j.at("beta"));
    c.comparison = mat_from_json(c.X.ring, j.at("comparison"));
    const json& ck = j.at("checks");
    c.exact = ck.at("exact").get<bool>();
    c.dual_exact = ck.at("dual_exact").get<bool>();
    c.pd_ok = ck.at("pd_ok").get<bool>();
    c.pd_Y.value = ck.at("pd_Y").at("value").get<int>();
    c.pd_Y.exceeded = ck.at("pd_Y").at("exceeded").get<bool>();
    c.ext_iso = ck.at("ext_iso").get<std::vector<bool>>();
    for (const auto& sj : ck.at("stable")) {
        StableHomCheckResult<R> r;
        r.H = module_from_json(primary, sj.at("H"));
        r.h_invariant.backend = sj.at("H_invariant").at("backend").get<std::string>();
        r.h_invariant.rank = sj.at("H_invariant").at("rank").get<long>();
        r.h_invariant.factors =
            sj.at("H_invariant").at("factors").get<std::vector<std::string>>();
        r.h_invariant.dimvec = sj.at("H_invariant").at("dimension_vector").get<std::vector<int>>();
        r.pd_ok = sj.at("pd_ok").get<bool>();
        r.iso = sj.at("iso").get<bool>();
        r.from.rank = sj.at("from").at("rank").get<long>();
        r.from.factors = sj.at("from").at("factors").get<std::vector<std::string>>();
        r.to.rank = sj.at("to").at("rank").get<long>();
        r.to.factors = sj.at("to").at("factors").get<std::vector<std::string>>();
        c.stable_checks.push_back(std::move(r));
    }
    return c;
}

template <class R>
json eg_cert_to_json(const EGCert<R>& c)
{
    return json{{"B", module_to_json(c.B)},
                {"Q", module_to_json(c.Q)},
                {"S", module_to_json(c.S)},
                {"checks",
                 json{{"exact", c.exact},
                      {"tf_S", c.tf_S},
                      {"top_row_exact", c.top_row_exact}}},
                {"d", c.d},
                {"incl", mat_to_json(c.incl)},
                {"module", module_to_json(c.M)},
                {"onto", mat_to_json(c.onto)},
                {"theorem", theorem_cert_to_json(c.thm)},
                {"top_incl", mat_to_json(c.top_incl)},
                {"top_onto", mat_to_json(c.top_onto)},
                {"type", "eg_certificate"}};
}

template <class R>
EGCert<R> eg_cert_from_json(const std::shared_ptr<const R>& primary, const json& j)
{
    EGCert<R> c;
    c.M = module_from_json(primary, j.at("module"));
    c.d = j.at("d").get<int>();
    c.B = module_from_json(primary, j.at("B"));
    c.Q = module_from_json(primary, j.at("Q"));
    c.S = module_from_json(primary, j.at("S"));
    c.incl = mat_from_json(c.S.ring, j.at("incl"));
    c.onto = mat_from_json(c.S.ring, j.at("onto"));
    c.top_incl = mat_from_json(c.S.ring, j.at("top_incl"));
    c.top_onto = mat_from_json(c.S.ring, j.at("top_onto"));
    c.thm = theorem_cert_from_json(primary, j.at("theorem"));
    const json& ck = j.at("checks");
    c.exact = ck.at("exact").get<bool>();
    c.tf_S = ck.at("tf_S").get<bool>();
    c.top_row_exact = ck.at("top_row_exact").get<bool>();
    return c;
}

inline json gorenstein_report_to_json(const GorensteinReport& rep, const json& ring)
{
    json terms = json::array();
    for (const auto& t : rep.terms) {
        json tj{{"essential", t.essential},
                {"invariant", invariant_to_json(t.invariant)},
                {"zero", t.zero}};
        if (t.fd) tj["fd"] = capvalue_to_json(*t.fd);
        else tj["fd"] = nullptr;
        terms.push_back(std::move(tj));
    }
    return json{{"cap", rep.cap},
                {"capability", rep.capability},
                {"k", rep.k},
                {"k_gorenstein", rep.k_gorenstein},
                {"note", rep.note},
                {"quasi_k_gorenstein", rep.quasi_k_gorenstein},
                {"ring", ring},
                {"terms", terms},
                {"type", "gorenstein_report"}};
}

template <class R>
json spotcheck_report_to_json(const SpotCheckReport<R>& rep, const json& ring)
{
    json viols = json::array();
    for (const auto& v : rep.violations)
        viols.push_back(json{{"detail", v.detail},
                             {"index", v.index},
                             {"sample", v.sample},
                             {"which", v.which}});
    json mods = json::array();
    for (const auto& m : rep.sample_modules) mods.push_back(module_to_json(m));
    return json{{"k", rep.k},
                {"ring", ring},
                {"sample_modules", mods},
                {"samples", rep.samples},
                {"type", "spotcheck_report"},
                {"violations", viols}};
}

} // namespace halg
