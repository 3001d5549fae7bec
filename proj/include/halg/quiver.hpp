#pragma once

// Bound quiver algebra backend over a prime field F_p.
//
// The algebra is the path algebra of a finite quiver modulo the two-sided
// ideal generated by the given relations together with all paths of length
// > N, where N is the declared nilpotency bound.  The build certifies that
// every path of length exactly N already reduces to zero; the resulting
// quotient is finite dimensional with radical equal to the arrow ideal.
//
// Path composition is written function-style: b*a means "a then b".
//
// The opposite algebra shares the basis indexing (a path class and its
// mirror are identified coordinate-wise), so the element map used by
// opposite transfer is the identity on coordinates; only the quiver
// orientation and the multiplication table transpose differ.

#include "halg/fp.hpp"
#include "halg/ring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace halg {

struct QuiverArrow {
    std::string name;
    int from = 0, to = 0;
};

struct QuiverSpec {
    uint32_t p = 2;
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows; // indices into vertices
    std::vector<std::string> relations;
    int nilpotency_bound = 0; // 0 = use the default
};

namespace detail {

struct PathRec {
    int source = 0, target = 0;
    std::vector<int> arrows; // traversal order; empty = trivial path
};

} // namespace detail

class QuiverCore {
public:
    uint32_t p = 2;
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    std::vector<std::string> relation_exprs;
    int bound = 0;
    // raw structure-constants algebras label their basis directly and carry
    // a user-supplied radical (validated nilpotent, not verified semisimple)
    bool trusted_radical = false;
    std::vector<std::string> basis_labels;

    int dim = 0;
    std::vector<detail::PathRec> basis;   // representative path per class
    std::vector<int> vertex_class;        // class index of e_v
    std::vector<int> arrow_class;         // class index of each arrow
    std::vector<int> radical_classes;     // classes of length >= 1
    // mult[i][j] = coordinates of basis_i * basis_j (primary order: j then i)
    std::vector<std::vector<uint32_t>> mult;

    const std::vector<uint32_t>& prod(int i, int j) const
    {
        return mult[static_cast<size_t>(i) * dim + j];
    }
};

class QuiverAlgebra {
public:
    using Elem = std::vector<uint32_t>;

    static constexpr bool is_fd = true;
    static constexpr const char* kind = "bound_quiver";

    static std::shared_ptr<const QuiverAlgebra> build(const QuiverSpec& spec);

    std::shared_ptr<const QuiverAlgebra> opposite() const { return op_; }

    uint32_t p() const { return core_->p; }
    int dim() const { return core_->dim; }
    int num_vertices() const { return static_cast<int>(core_->vertices.size()); }
    bool reversed() const { return rev_; }
    const QuiverCore& core() const { return *core_; }

    Elem zero() const { return Elem(core_->dim, 0); }
    Elem one() const
    {
        Elem e(core_->dim, 0);
        for (int c : core_->vertex_class) e[c] = 1;
        return e;
    }
    Elem basis_elem(int i) const
    {
        Elem e(core_->dim, 0);
        e[i] = 1;
        return e;
    }
    Elem idempotent(int v) const { return basis_elem(core_->vertex_class[v]); }
    Elem arrow(int a) const { return basis_elem(core_->arrow_class[a]); }
    Elem scalar(int64_t c) const
    {
        Elem e = one();
        uint32_t cc = fp_norm(c, core_->p);
        for (auto& x : e) x = fp_mul(x, cc, core_->p);
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const
    {
        Elem r(core_->dim);
        for (int i = 0; i < core_->dim; ++i) r[i] = fp_add(a[i], b[i], core_->p);
        return r;
    }
    Elem neg(const Elem& a) const
    {
        Elem r(core_->dim);
        for (int i = 0; i < core_->dim; ++i) r[i] = fp_sub(0, a[i], core_->p);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const
    {
        Elem r(core_->dim, 0);
        for (int i = 0; i < core_->dim; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < core_->dim; ++j) {
                if (!b[j]) continue;
                uint32_t c = fp_mul(a[i], b[j], core_->p);
                const auto& t = rev_ ? core_->prod(j, i) : core_->prod(i, j);
                for (int k = 0; k < core_->dim; ++k)
                    if (t[k]) r[k] = fp_add(r[k], fp_mul(c, t[k], core_->p), core_->p);
            }
        }
        return r;
    }
    bool is_zero(const Elem& a) const
    {
        for (uint32_t v : a) if (v) return false;
        return true;
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem op_elem(const Elem& a) const { return a; } // shared basis indexing

    // A radical element has no component on any vertex class.
    bool in_radical(const Elem& a) const
    {
        for (int c : core_->vertex_class)
            if (a[c]) return false;
        return true;
    }

    // F_p matrix of right multiplication x -> x*a on flat coordinates.
    FpMat right_mul_matrix(const Elem& a) const
    {
        FpMat m(core_->p, core_->dim, core_->dim);
        for (int s = 0; s < core_->dim; ++s) {
            Elem r = mul(basis_elem(s), a);
            for (int t = 0; t < core_->dim; ++t) m.at(s, t) = r[t];
        }
        return m;
    }

    std::string to_string(const Elem& a) const;
    Elem parse(const std::string& expr) const;

    // Internal: relation-expression parser shared with the core builder.
    static std::vector<std::string> split_trim(const std::string& s, char sep);

private:
    friend std::shared_ptr<const QuiverAlgebra> make_pair_(std::shared_ptr<const QuiverCore> core);

    std::shared_ptr<const QuiverCore> core_;
    bool rev_ = false;
    std::shared_ptr<const QuiverAlgebra> op_;

    int vertex_index(const std::string& name) const
    {
        for (size_t i = 0; i < core_->vertices.size(); ++i)
            if (core_->vertices[i] == name) return static_cast<int>(i);
        return -1;
    }
    int arrow_index(const std::string& name) const
    {
        for (size_t i = 0; i < core_->arrows.size(); ++i)
            if (core_->arrows[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

// ---------------------------------------------------------------------------
// implementation

inline std::vector<std::string> QuiverAlgebra::split_trim(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

namespace detail {

inline bool is_integer_token(const std::string& t)
{
    if (t.empty()) return false;
    size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

// A relation term: coefficient and arrow traversal (first arrow first).
struct RelTerm {
    uint32_t coeff = 1;
    std::vector<int> arrows;
    int source = -1, target = -1;
};

// Parse one term of a relation over the primary quiver.  Factors are read
// function-style, so the traversal is the reversed factor list.
inline RelTerm parse_rel_term(const std::string& term, const QuiverSpec& spec)
{
    RelTerm out;
    auto factors = QuiverAlgebra::split_trim(term, '*');
    std::vector<std::string> names;
    int64_t coeff = 1;
    for (const auto& f : factors) {
        if (f.empty())
            throw Error(ErrorKind::BadRelation, "empty factor in relation term '" + term + "'");
        if (is_integer_token(f)) {
            coeff *= std::stoll(f);
        } else {
            names.push_back(f);
        }
    }
    out.coeff = fp_norm(coeff, spec.p);
    std::reverse(names.begin(), names.end()); // traversal order
    int cursor = -1;
    for (const auto& name : names) {
        if (name.size() > 1 && name[0] == 'e') {
            std::string v = name.substr(1);
            for (size_t i = 0; i < spec.vertices.size(); ++i)
                if (spec.vertices[i] == v) {
                    if (cursor >= 0 && cursor != static_cast<int>(i))
                        throw Error(ErrorKind::BadRelation,
                                    "vertex mismatch in relation term '" + term + "'");
                    cursor = static_cast<int>(i);
                    if (out.source < 0) out.source = cursor;
                    goto next_factor;
                }
        }
        {
            int ai = -1;
            for (size_t i = 0; i < spec.arrows.size(); ++i)
                if (spec.arrows[i].name == name) { ai = static_cast<int>(i); break; }
            if (ai < 0)
                throw Error(ErrorKind::BadRelation, "unknown name '" + name + "' in relation");
            if (cursor >= 0 && cursor != spec.arrows[ai].from)
                throw Error(ErrorKind::BadRelation,
                            "arrows not composable in relation term '" + term + "'");
            if (out.source < 0) out.source = spec.arrows[ai].from;
            out.arrows.push_back(ai);
            cursor = spec.arrows[ai].to;
        }
    next_factor:;
    }
    out.target = cursor;
    if (out.arrows.size() < 2)
        throw Error(ErrorKind::BadRelation,
                    "relation term '" + term + "' has fewer than two arrows");
    return out;
}

} // namespace detail

// Effective nilpotency bound: the declared one, or arrows x max(relation
// length, 2) + 1 so relation-free acyclic quivers certify as well.
inline int effective_nilpotency_bound(const QuiverSpec& spec)
{
    if (spec.nilpotency_bound > 0) return spec.nilpotency_bound;
    int max_rel_len = 0;
    for (const auto& rel : spec.relations) {
        for (const auto& part : QuiverAlgebra::split_trim(rel, '+')) {
            int arrows = 0;
            for (const auto& f : QuiverAlgebra::split_trim(part, '*'))
                if (!f.empty() && !detail::is_integer_token(f) &&
                    !(f.size() > 1 && f[0] == 'e'))
                    ++arrows;
            max_rel_len = std::max(max_rel_len, arrows);
        }
    }
    return static_cast<int>(spec.arrows.size()) * std::max(max_rel_len, 2) + 1;
}

inline std::shared_ptr<const QuiverAlgebra>
make_pair_(std::shared_ptr<const QuiverCore> core)
{
    auto prim = std::shared_ptr<QuiverAlgebra>(new QuiverAlgebra());
    auto op = std::shared_ptr<QuiverAlgebra>(new QuiverAlgebra());
    prim->core_ = core;
    prim->rev_ = false;
    op->core_ = core;
    op->rev_ = true;
    prim->op_ = op;
    op->op_ = prim;
    return prim;
}

inline std::shared_ptr<const QuiverAlgebra> QuiverAlgebra::build(const QuiverSpec& spec)
{
    using detail::PathRec;

    if (!is_prime_u32(spec.p))
        throw Error(ErrorKind::MalformedInput, "p must be a prime");
    if (spec.vertices.empty())
        throw Error(ErrorKind::MalformedInput, "quiver needs at least one vertex");
    for (const auto& a : spec.arrows)
        if (a.from < 0 || a.from >= static_cast<int>(spec.vertices.size()) ||
            a.to < 0 || a.to >= static_cast<int>(spec.vertices.size()))
            throw Error(ErrorKind::MalformedInput, "arrow endpoint out of range");
    {
        std::vector<std::string> names;
        for (const auto& v : spec.vertices) names.push_back("e" + v);
        for (const auto& a : spec.arrows) names.push_back(a.name);
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw Error(ErrorKind::MalformedInput, "vertex/arrow name collision");
    }

    auto core = std::make_shared<QuiverCore>();
    core->p = spec.p;
    core->vertices = spec.vertices;
    core->arrows = spec.arrows;
    core->relation_exprs = spec.relations;

    std::vector<detail::RelTerm> terms;
    std::vector<std::vector<int>> rel_term_index(spec.relations.size());
    for (size_t r = 0; r < spec.relations.size(); ++r) {
        auto parts = split_trim(spec.relations[r], '+');
        int src = -1, tgt = -1;
        for (const auto& part : parts) {
            detail::RelTerm t = detail::parse_rel_term(part, spec);
            if (src < 0) { src = t.source; tgt = t.target; }
            if (t.source != src || t.target != tgt)
                throw Error(ErrorKind::BadRelation,
                            "relation '" + spec.relations[r] + "' mixes sources/targets");
            rel_term_index[r].push_back(static_cast<int>(terms.size()));
            terms.push_back(std::move(t));
        }
    }

    int bound = effective_nilpotency_bound(spec);
    core->bound = bound;

    // Enumerate paths up to length `bound`.
    std::vector<PathRec> paths;
    std::map<std::vector<int>, int> by_arrows; // nonempty paths keyed by arrows
    std::vector<std::vector<int>> by_length(bound + 1);
    for (int v = 0; v < static_cast<int>(spec.vertices.size()); ++v) {
        PathRec pr;
        pr.source = pr.target = v;
        by_length[0].push_back(static_cast<int>(paths.size()));
        paths.push_back(pr);
    }
    for (int len = 1; len <= bound; ++len) {
        for (int pid : by_length[len - 1]) {
            PathRec base = paths[pid];
            for (size_t ai = 0; ai < spec.arrows.size(); ++ai) {
                if (spec.arrows[ai].from != base.target) continue;
                PathRec ext = base;
                ext.arrows.push_back(static_cast<int>(ai));
                ext.target = spec.arrows[ai].to;
                by_arrows[ext.arrows] = static_cast<int>(paths.size());
                by_length[len].push_back(static_cast<int>(paths.size()));
                paths.push_back(std::move(ext));
                if (paths.size() > 200000)
                    throw Error(ErrorKind::Internal, "path enumeration exceeds limit; "
                                                     "lower the nilpotency bound");
            }
        }
    }
    int npaths = static_cast<int>(paths.size());
    auto path_id = [&](const std::vector<int>& arrows, int src) -> int {
        if (arrows.empty()) return src;
        auto it = by_arrows.find(arrows);
        return it == by_arrows.end() ? -1 : it->second;
    };

    // Ideal span: truncations of u * rel * w, echelonized with long paths as
    // leading coordinates so that short paths survive into the basis.
    auto coord_of = [&](int pid) { return npaths - 1 - pid; };
    FpEchelon ech(spec.p, npaths);
    for (size_t r = 0; r < spec.relations.size(); ++r) {
        int min_len = bound + 1, src = -1, tgt = -1;
        for (int ti : rel_term_index[r]) {
            min_len = std::min(min_len, static_cast<int>(terms[ti].arrows.size()));
            src = terms[ti].source;
            tgt = terms[ti].target;
        }
        for (int wid = 0; wid < npaths; ++wid) {
            const PathRec& w = paths[wid];
            if (w.target != src) continue;
            for (int uid = 0; uid < npaths; ++uid) {
                const PathRec& u = paths[uid];
                if (u.source != tgt) continue;
                int wl = static_cast<int>(w.arrows.size());
                int ul = static_cast<int>(u.arrows.size());
                if (wl + min_len + ul > bound) continue;
                std::vector<uint32_t> vec(npaths, 0);
                bool any = false;
                for (int ti : rel_term_index[r]) {
                    const auto& t = terms[ti];
                    int total = wl + static_cast<int>(t.arrows.size()) + ul;
                    if (total > bound) continue; // truncated component
                    std::vector<int> arr = w.arrows;
                    arr.insert(arr.end(), t.arrows.begin(), t.arrows.end());
                    arr.insert(arr.end(), u.arrows.begin(), u.arrows.end());
                    int pid = path_id(arr, w.source);
                    if (pid < 0)
                        throw Error(ErrorKind::Internal, "relation path missing from enumeration");
                    vec[coord_of(pid)] = fp_add(vec[coord_of(pid)], t.coeff, spec.p);
                    any = true;
                }
                if (any) ech.insert(std::move(vec));
            }
        }
    }

    // Admissibility certificate: every path of length `bound` reduces to 0.
    for (int pid : by_length[bound]) {
        std::vector<uint32_t> unit(npaths, 0);
        unit[coord_of(pid)] = 1;
        if (!ech.contains(unit)) {
            std::string repr;
            for (int ai : paths[pid].arrows)
                repr = spec.arrows[ai].name + (repr.empty() ? "" : "*") + repr;
            throw Error(ErrorKind::NotAdmissible,
                        "path " + repr + " of length " + std::to_string(bound) +
                        " does not reduce to zero; ideal not admissible up to the bound");
        }
    }

    // Basis: non-pivot path classes (all of length < bound after the check).
    std::vector<bool> is_pivot(npaths, false);
    for (int c : ech.pivots) is_pivot[npaths - 1 - c] = true;
    std::vector<int> basis_of_path(npaths, -1);
    for (int pid = 0; pid < npaths; ++pid) {
        if (is_pivot[pid]) continue;
        if (static_cast<int>(paths[pid].arrows.size()) >= bound) continue;
        basis_of_path[pid] = core->dim++;
        core->basis.push_back(paths[pid]);
    }
    core->vertex_class.resize(spec.vertices.size());
    for (int v = 0; v < static_cast<int>(spec.vertices.size()); ++v) {
        if (basis_of_path[v] < 0)
            throw Error(ErrorKind::Internal, "vertex idempotent eliminated");
        core->vertex_class[v] = basis_of_path[v];
    }
    core->arrow_class.resize(spec.arrows.size());
    for (size_t ai = 0; ai < spec.arrows.size(); ++ai) {
        int pid = path_id({static_cast<int>(ai)}, spec.arrows[ai].from);
        if (pid < 0 || basis_of_path[pid] < 0)
            throw Error(ErrorKind::Internal, "arrow class eliminated");
        core->arrow_class[ai] = basis_of_path[pid];
    }
    for (int b = 0; b < core->dim; ++b)
        if (!core->basis[b].arrows.empty()) core->radical_classes.push_back(b);

    // Normal form of a path id as coordinates over the basis.
    auto nf = [&](int pid) {
        std::vector<uint32_t> unit(npaths, 0);
        unit[coord_of(pid)] = 1;
        auto res = ech.reduce(std::move(unit));
        std::vector<uint32_t> out(core->dim, 0);
        for (int q = 0; q < npaths; ++q) {
            uint32_t c = res[coord_of(q)];
            if (!c) continue;
            if (basis_of_path[q] < 0)
                throw Error(ErrorKind::Internal, "residue on non-basis path");
            out[basis_of_path[q]] = c;
        }
        return out;
    };

    core->mult.assign(static_cast<size_t>(core->dim) * core->dim,
                      std::vector<uint32_t>(core->dim, 0));
    for (int i = 0; i < core->dim; ++i)
        for (int j = 0; j < core->dim; ++j) {
            const PathRec& pi = core->basis[i];
            const PathRec& pj = core->basis[j];
            if (pj.target != pi.source) continue; // b_i * b_j = (j then i)
            std::vector<int> arr = pj.arrows;
            arr.insert(arr.end(), pi.arrows.begin(), pi.arrows.end());
            if (static_cast<int>(arr.size()) > bound) continue; // zero class
            int pid = path_id(arr, pj.source);
            if (pid < 0) throw Error(ErrorKind::Internal, "product path missing");
            core->mult[static_cast<size_t>(i) * core->dim + j] = nf(pid);
        }

    auto prim = make_pair_(core);

    // Exhaustive associativity check over basis triples.
    for (int i = 0; i < core->dim; ++i)
        for (int j = 0; j < core->dim; ++j)
            for (int k = 0; k < core->dim; ++k) {
                auto lhs = prim->mul(prim->mul(prim->basis_elem(i), prim->basis_elem(j)),
                                     prim->basis_elem(k));
                auto rhs = prim->mul(prim->basis_elem(i),
                                     prim->mul(prim->basis_elem(j), prim->basis_elem(k)));
                if (lhs != rhs)
                    throw Error(ErrorKind::Internal, "multiplication table not associative");
            }
    return prim;
}

inline std::string QuiverAlgebra::to_string(const Elem& a) const
{
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < core_->dim; ++i) {
        if (!a[i]) continue;
        if (!first) out << " + ";
        first = false;
        if (!core_->basis_labels.empty()) {
            if (a[i] != 1) out << a[i] << "*";
            out << core_->basis_labels[i];
            continue;
        }
        const auto& pr = core_->basis[i];
        std::string path;
        if (pr.arrows.empty()) {
            path = "e" + core_->vertices[pr.source];
        } else {
            std::vector<int> seq = pr.arrows;
            if (!rev_) std::reverse(seq.begin(), seq.end()); // function order
            for (size_t k = 0; k < seq.size(); ++k) {
                if (k) path += "*";
                path += core_->arrows[seq[k]].name;
            }
        }
        if (a[i] != 1) out << a[i] << "*";
        out << path;
    }
    if (first) out << "0";
    return out.str();
}

inline QuiverAlgebra::Elem QuiverAlgebra::parse(const std::string& expr) const
{
    Elem acc = zero();
    for (const auto& term : split_trim(expr, '+')) {
        if (term.empty())
            throw Error(ErrorKind::MalformedInput, "empty term in element expression");
        if (term == "0") continue;
        Elem val = one();
        for (const auto& f : split_trim(term, '*')) {
            Elem factor;
            int label = -1;
            if (!core_->basis_labels.empty())
                for (size_t b = 0; b < core_->basis_labels.size(); ++b)
                    if (core_->basis_labels[b] == f) { label = static_cast<int>(b); break; }
            if (detail::is_integer_token(f)) {
                factor = scalar(std::stoll(f));
            } else if (label >= 0) {
                factor = basis_elem(label);
            } else if (f.size() > 1 && f[0] == 'e' && vertex_index(f.substr(1)) >= 0) {
                factor = idempotent(vertex_index(f.substr(1)));
            } else if (arrow_index(f) >= 0) {
                factor = arrow(arrow_index(f));
            } else {
                throw Error(ErrorKind::MalformedInput, "unknown token '" + f + "' in element");
            }
            val = mul(val, factor);
        }
        acc = add(acc, val);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Raw structure-constants loader.  The caller supplies a based algebra with
// orthogonal idempotents summing to one and a radical basis that is only
// validated to span a nilpotent two-sided ideal (trusted_radical): whether
// the quotient by it is semisimple is NOT verified.

struct StructureConstantsSpec {
    uint32_t p = 2;
    int dim = 0;
    std::vector<std::string> labels;                 // one per basis element
    std::vector<std::vector<std::vector<uint32_t>>> table; // table[i][j] = coords of b_i*b_j
    std::vector<int> idempotents;                    // basis indices, one per "vertex"
    std::vector<int> radical_basis;                  // basis indices
    bool trusted_radical = false;
};

inline std::shared_ptr<const QuiverAlgebra>
build_structure_constants(const StructureConstantsSpec& spec)
{
    if (!is_prime_u32(spec.p)) throw Error(ErrorKind::MalformedInput, "p must be a prime");
    if (!spec.trusted_radical)
        throw Error(ErrorKind::MalformedInput,
                    "structure-constants input requires trusted_radical: the radical "
                    "basis is user-supplied and only validated for nilpotency");
    int n = spec.dim;
    if (n <= 0 || static_cast<int>(spec.labels.size()) != n ||
        static_cast<int>(spec.table.size()) != n)
        throw Error(ErrorKind::MalformedInput, "structure constants: shape");
    for (const auto& row : spec.table)
        if (static_cast<int>(row.size()) != n)
            throw Error(ErrorKind::MalformedInput, "structure constants: table shape");

    auto core = std::make_shared<QuiverCore>();
    core->p = spec.p;
    core->dim = n;
    core->trusted_radical = true;
    core->basis_labels = spec.labels;
    core->basis.resize(n); // unused path data
    core->mult.assign(static_cast<size_t>(n) * n, std::vector<uint32_t>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (static_cast<int>(spec.table[i][j].size()) != n)
                throw Error(ErrorKind::MalformedInput, "structure constants: entry shape");
            for (int k = 0; k < n; ++k)
                core->mult[static_cast<size_t>(i) * n + j][k] = spec.table[i][j][k] % spec.p;
        }
    for (int v : spec.idempotents) {
        if (v < 0 || v >= n)
            throw Error(ErrorKind::MalformedInput, "structure constants: idempotent index");
        core->vertex_class.push_back(v);
        core->vertices.push_back(spec.labels[v]);
    }
    for (int r : spec.radical_basis) {
        if (r < 0 || r >= n)
            throw Error(ErrorKind::MalformedInput, "structure constants: radical index");
        core->radical_classes.push_back(r);
    }

    auto prim = make_pair_(core);

    // associativity, exhaustively
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (prim->mul(prim->mul(prim->basis_elem(i), prim->basis_elem(j)),
                              prim->basis_elem(k)) !=
                    prim->mul(prim->basis_elem(i),
                              prim->mul(prim->basis_elem(j), prim->basis_elem(k))))
                    throw Error(ErrorKind::MalformedInput,
                                "structure constants: table not associative");
    // idempotents orthogonal and summing to one
    for (size_t a = 0; a < core->vertex_class.size(); ++a)
        for (size_t b = 0; b < core->vertex_class.size(); ++b) {
            auto prod = prim->mul(prim->basis_elem(core->vertex_class[a]),
                                  prim->basis_elem(core->vertex_class[b]));
            auto want = (a == b) ? prim->basis_elem(core->vertex_class[a]) : prim->zero();
            if (prod != want)
                throw Error(ErrorKind::MalformedInput,
                            "structure constants: idempotents not orthogonal idempotent");
        }
    {
        auto s = prim->zero();
        for (int v : core->vertex_class) s = prim->add(s, prim->basis_elem(v));
        for (int i = 0; i < n; ++i) {
            auto bi = prim->basis_elem(i);
            if (prim->mul(s, bi) != bi || prim->mul(bi, s) != bi)
                throw Error(ErrorKind::MalformedInput,
                            "structure constants: idempotents do not sum to the identity");
        }
    }
    // radical span: a two-sided ideal, nilpotent
    {
        FpEchelon rad(spec.p, n);
        for (int r : core->radical_classes) {
            std::vector<uint32_t> u(n, 0);
            u[r] = 1;
            rad.insert(std::move(u));
        }
        for (int r : core->radical_classes)
            for (int i = 0; i < n; ++i) {
                if (!rad.contains(prim->mul(prim->basis_elem(i), prim->basis_elem(r))) ||
                    !rad.contains(prim->mul(prim->basis_elem(r), prim->basis_elem(i))))
                    throw Error(ErrorKind::MalformedInput,
                                "structure constants: radical span is not a two-sided ideal");
            }
        // nilpotency: powers of the span must shrink to zero
        std::vector<QuiverAlgebra::Elem> cur;
        for (int r : core->radical_classes) cur.push_back(prim->basis_elem(r));
        for (int step = 0; step <= n && !cur.empty(); ++step) {
            if (step == n)
                throw Error(ErrorKind::MalformedInput,
                            "structure constants: radical basis is not nilpotent");
            FpEchelon next(spec.p, n);
            std::vector<QuiverAlgebra::Elem> nx;
            for (const auto& x : cur)
                for (int r : core->radical_classes) {
                    auto prod = prim->mul(x, prim->basis_elem(r));
                    if (!prim->is_zero(prod) && next.insert(prod)) nx.push_back(prod);
                }
            cur = std::move(nx);
        }
    }
    return prim;
}

} // namespace halg
