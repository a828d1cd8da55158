#include "kg/ckrep.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace kg {

MatrixCK::MatrixCK(const KGraph& g, std::vector<BoundaryPath> basis)
    : g_(&g), basis_(std::move(basis)) {
    std::sort(basis_.begin(), basis_.end(),
              [&](const BoundaryPath& a, const BoundaryPath& b) { return bp_less(g, a, b); });
}

int MatrixCK::index_of(const BoundaryPath& x) const {
    BoundaryPath c = bp_canonical(*g_, x);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (bp_equal(*g_, basis_[i], c)) return static_cast<int>(i);
    return -1;
}

IMat MatrixCK::matrix_for(const Path& lambda) const {
    IMat m = IMat::Zero(dim(), dim());
    VertexId s = source_of(*g_, lambda);
    for (int col = 0; col < dim(); ++col) {
        const BoundaryPath& x = basis_[static_cast<std::size_t>(col)];
        if (x.range() != s) continue;
        int row = index_of(prepend(*g_, lambda, x));
        if (row < 0) throw std::logic_error("matrix_for: prepend left the basis");
        m(row, col) = 1;
    }
    return m;
}

IMat MatrixCK::vertex_matrix(VertexId v) const { return matrix_for(vertex_path(*g_, v)); }

MatrixCK build_matrix_rep(const KGraph& g) {
    if (!boundary_exact(g))
        throw std::invalid_argument(
            "build_matrix_rep: trajectory enumeration is inexact or infinite");
    std::vector<BoundaryPath> basis;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        BoundarySet bs = boundary_paths(g, v);
        for (const BoundaryPath& x : bs.paths) basis.push_back(bp_canonical(g, x));
    }
    MatrixCK rep(g, std::move(basis));
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (rep.vertex_matrix(v).isZero())
            throw std::logic_error("build_matrix_rep: a vertex acts as zero");
    return rep;
}

namespace {

std::vector<Path> all_paths_leq(const KGraph& g, const Degree& cap) {
    std::vector<Path> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (const Degree& d : degrees_leq(cap))
            for (const Path& p : paths_of_degree(g, v, d)) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CkReport verify_ck_axioms(const MatrixCK& rep, const Degree& cap) {
    const KGraph& g = rep.graph();
    CkReport report;

    std::vector<IMat> vert;
    for (VertexId v = 0; v < g.vertex_count(); ++v) vert.push_back(rep.vertex_matrix(v));

    // Mutually orthogonal projections.
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        const IMat& su = vert[static_cast<std::size_t>(u)];
        report.record(su == su.transpose() && su * su == su,
                      "vertex " + g.vertex_name(u) + " is not a projection");
        for (VertexId v = u + 1; v < g.vertex_count(); ++v)
            report.record((su * vert[static_cast<std::size_t>(v)]).isZero(),
                          "vertex projections " + g.vertex_name(u) + ", " + g.vertex_name(v) +
                              " not orthogonal");
    }

    std::vector<Path> pool = all_paths_leq(g, cap);
    std::map<std::vector<EdgeId>, IMat> cache;
    auto mat = [&](const Path& p) -> const IMat& {
        auto key = p.word;
        key.push_back(static_cast<EdgeId>(-1 - p.range));  // distinguish vertex paths
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, rep.matrix_for(p)).first;
        return it->second;
    };

    // Multiplicativity over composable pairs.
    for (const Path& mu : pool)
        for (const Path& nu : pool) {
            if (source_of(g, mu) != nu.range) continue;
            if (!(mat(mu) * mat(nu) == mat(compose(g, mu, nu))))
                report.record(false, "composition rule fails at " + format_path(g, mu) + ", " +
                                         format_path(g, nu));
            else
                report.record(true, "");
        }

    // Adjoint products expand over minimal common extensions, and range
    // projections multiply accordingly.
    for (const Path& mu : pool)
        for (const Path& nu : pool) {
            IMat lhs = mat(mu).transpose() * mat(nu);
            IMat rhs = IMat::Zero(rep.dim(), rep.dim());
            for (const auto& [alpha, beta] : min_extensions(g, mu, nu))
                rhs += mat(alpha) * mat(beta).transpose();
            report.record(lhs == rhs, "adjoint product rule fails at " + format_path(g, mu) +
                                          ", " + format_path(g, nu));

            IMat pl = mat(mu) * mat(mu).transpose() * mat(nu) * mat(nu).transpose();
            IMat pr = IMat::Zero(rep.dim(), rep.dim());
            for (const Path& lam : mce(g, mu, nu)) pr += mat(lam) * mat(lam).transpose();
            report.record(pl == pr, "range-projection product rule fails at " +
                                        format_path(g, mu) + ", " + format_path(g, nu));
        }

    // Defect products over certified exhaustive sets vanish.
    Degree ones = Degree::uniform(g.rank(), 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (const FiniteExhaustiveSet& fe : fe_family(g, v, ones)) {
            IMat prod = IMat::Identity(rep.dim(), rep.dim());
            for (const Path& lam : fe.paths)
                prod = prod * (vert[static_cast<std::size_t>(v)] -
                               mat(lam) * mat(lam).transpose());
            report.record(prod.isZero(), "defect product nonzero at " + g.vertex_name(v));
        }
    }

    // Inside a <=n set distinct members have orthogonal adjoint products,
    // and the vertex projection dominates the sum of range projections.
    for (const Degree& n : degrees_leq(cap)) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            std::vector<Path> le = paths_le(g, v, n);
            IMat sum = IMat::Zero(rep.dim(), rep.dim());
            for (const Path& mu : le) sum += mat(mu) * mat(mu).transpose();
            for (const Path& mu : le)
                for (const Path& nu : le) {
                    IMat lhs = mat(mu).transpose() * mat(nu);
                    IMat rhs = mu == nu ? rep.vertex_matrix(source_of(g, mu))
                                        : IMat::Zero(rep.dim(), rep.dim());
                    report.record(lhs == rhs, "orthogonality in the <=n set fails at " +
                                                  format_path(g, mu) + ", " +
                                                  format_path(g, nu));
                }
            IMat diff = vert[static_cast<std::size_t>(v)] - sum;
            bool diag_ok = diff == diff.transpose();
            for (int i = 0; i < rep.dim() && diag_ok; ++i)
                for (int j = 0; j < rep.dim(); ++j)
                    if ((i == j && diff(i, j) < 0) || (i != j && diff(i, j) != 0)) {
                        diag_ok = false;
                        break;
                    }
            report.record(diag_ok, "projection-sum domination fails at " + g.vertex_name(v) +
                                       " with n = " + n.to_string());
        }
    }
    return report;
}

CkReport verify_ck_axioms(const MatrixCK& rep) {
    return verify_ck_axioms(rep, Degree::uniform(rep.graph().rank(), 2));
}

std::vector<Path> pi_closure(const KGraph& g, const std::vector<Path>& E,
                             std::size_t size_cap) {
    std::set<Path> closed(E.begin(), E.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Path> members(closed.begin(), closed.end());
        for (const Path& lambda : members)
            for (const Path& mu : members) {
                if (lambda.degree != mu.degree || source_of(g, lambda) != source_of(g, mu))
                    continue;
                for (const Path& nu : members)
                    for (const Path& rho : members) {
                        if (nu.degree != rho.degree || source_of(g, nu) != source_of(g, rho))
                            continue;
                        for (const auto& [alpha, beta] : min_extensions(g, mu, nu)) {
                            if (closed.insert(compose(g, lambda, alpha)).second) grew = true;
                            if (closed.insert(compose(g, rho, beta)).second) grew = true;
                            if (closed.size() > size_cap)
                                throw std::runtime_error("pi_closure: size cap exceeded");
                        }
                    }
            }
    }
    return {closed.begin(), closed.end()};
}

void FormalElement::add(const KGraph& g, const Path& mu, const Path& nu,
                        std::complex<double> coeff) {
    if (source_of(g, mu) != source_of(g, nu))
        throw std::invalid_argument("formal element: term sources must agree");
    auto key = std::make_pair(mu, nu);
    auto it = terms_.find(key);
    std::complex<double> c = coeff + (it == terms_.end() ? 0.0 : it->second);
    if (std::abs(c) <= kPruneTol) {
        if (it != terms_.end()) terms_.erase(it);
    } else {
        terms_[key] = c;
    }
}

bool formal_equal(const FormalElement& a, const FormalElement& b, double tol) {
    for (const auto& [k, c] : a.terms()) {
        auto it = b.terms().find(k);
        if (std::abs(c - (it == b.terms().end() ? 0.0 : it->second)) > tol) return false;
    }
    for (const auto& [k, c] : b.terms())
        if (!a.terms().count(k) && std::abs(c) > tol) return false;
    return true;
}

FormalElement gauge_apply(const KGraph& g, const FormalElement& a,
                          const std::vector<std::complex<double>>& z) {
    if (static_cast<int>(z.size()) != g.rank())
        throw std::invalid_argument("gauge: need one unit complex number per color");
    for (const auto& zi : z)
        if (std::abs(std::abs(zi) - 1.0) > 1e-9)
            throw std::invalid_argument("gauge: coordinates must lie on the unit circle");
    FormalElement out;
    for (const auto& [key, coeff] : a.terms()) {
        std::complex<double> factor = 1.0;
        for (int i = 0; i < g.rank(); ++i) {
            int e = key.first.degree[i] - key.second.degree[i];
            for (int t = 0; t < std::abs(e); ++t) factor *= e > 0 ? z[i] : std::conj(z[i]);
        }
        out.add(g, key.first, key.second, factor * coeff);
    }
    return out;
}

CMat evaluate(const MatrixCK& rep, const FormalElement& a) {
    CMat m = CMat::Zero(rep.dim(), rep.dim());
    for (const auto& [key, coeff] : a.terms()) {
        IMat prod = rep.matrix_for(key.first) * rep.matrix_for(key.second).transpose();
        m += coeff * prod.cast<std::complex<double>>();
    }
    return m;
}

IMat evaluate_exact(const MatrixCK& rep, const FormalElement& a) {
    IMat m = IMat::Zero(rep.dim(), rep.dim());
    for (const auto& [key, coeff] : a.terms()) {
        double r = coeff.real();
        if (std::abs(coeff.imag()) > 0 || r != std::round(r))
            throw std::invalid_argument("exact evaluation requires integer coefficients");
        m += static_cast<std::int64_t>(std::llround(r)) *
             (rep.matrix_for(key.first) * rep.matrix_for(key.second).transpose());
    }
    return m;
}

double operator_norm(const CMat& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

QmapResult qmap(const MatrixCK& rep, const std::vector<Path>& H, const Degree& N,
                const FormalElement& a) {
    const KGraph& g = rep.graph();
    AperiodicityReport ap = check_aperiodicity(g);
    if (!ap.verdict.holds())
        throw std::invalid_argument("qmap: aperiodicity not established");

    std::set<Path> hset(H.begin(), H.end());
    for (const auto& [key, coeff] : a.terms()) {
        (void)coeff;
        if (!hset.count(key.first) || !hset.count(key.second))
            throw std::invalid_argument("qmap: support leaves H x H");
        if (!in_le(g, key.first, N))
            throw std::invalid_argument("qmap: a nonzero row path is outside the <=N set");
    }

    QmapResult res;
    res.tau = separating_extension(g, H, default_tau_bound(g));

    // One compression corner per populated degree n <= N.
    std::vector<CMat> corners;
    for (const Degree& n : degrees_leq(N)) {
        IMat qn = IMat::Zero(rep.dim(), rep.dim());
        bool populated = false;
        for (const Path& rho : H) {
            if (rho.degree != n || !in_le(g, rho, N)) continue;
            Path dressed = compose(g, rho, res.tau);
            IMat s = rep.matrix_for(dressed);
            qn += s * s.transpose();
            populated = true;
        }
        if (populated) corners.push_back(qn.cast<std::complex<double>>());
    }

    FormalElement a0;
    for (const auto& [key, coeff] : a.terms())
        if (key.first.degree == key.second.degree) a0.add(g, key.first, key.second, coeff);

    CMat ma = evaluate(rep, a);
    CMat ma0 = evaluate(rep, a0);
    auto compress = [&](const CMat& b) {
        CMat out = CMat::Zero(rep.dim(), rep.dim());
        for (const CMat& qn : corners) out += qn * b * qn;
        return out;
    };
    res.qa = compress(ma);
    res.qa0 = compress(ma0);
    res.norm_a = operator_norm(ma);
    res.norm_a0 = operator_norm(ma0);
    res.norm_qa = operator_norm(res.qa);
    res.norm_qa0 = operator_norm(res.qa0);
    res.qa_equals_qa0 = (res.qa - res.qa0).cwiseAbs().maxCoeff() <= 1e-12;
    res.norm_preserved = std::abs(res.norm_qa0 - res.norm_a0) <= 1e-9;
    res.norm_decreasing = res.norm_qa <= res.norm_a + 1e-9;
    return res;
}

KernelWitness kernel_witness(const KGraph& g, VertexId v, const Degree& m, const Degree& n) {
    LpCheck chk = check_local_periodicity(g, v, m, n);
    if (!chk.verdict.holds())
        throw std::invalid_argument("kernel_witness: local periodicity not established");
    PeriodicityTriple t = periodicity_triple(g, v, m, n);

    KernelWitness kw;
    kw.mu = t.mu;
    kw.nu = t.nu;
    kw.alpha = t.alpha;
    Path mua = compose(g, t.mu, t.alpha);
    Path nua = compose(g, t.nu, t.alpha);
    kw.a.add(g, mua, mua, 1.0);
    kw.a.add(g, nua, mua, -1.0);

    kw.omega.assign(static_cast<std::size_t>(g.rank()), 1.0);
    for (int i = 0; i < g.rank(); ++i) {
        int delta = n[i] - m[i];
        if (delta != 0) {
            kw.omega[static_cast<std::size_t>(i)] =
                std::polar(1.0, std::acos(-1.0) / static_cast<double>(delta));
            break;
        }
    }
    return kw;
}

KernelWitnessCheck verify_kernel_witness(const MatrixCK& rep, const KernelWitness& kw) {
    const KGraph& g = rep.graph();
    KernelWitnessCheck out;
    out.representation_kills = evaluate_exact(rep, kw.a).isZero();

    Path mua = compose(g, kw.mu, kw.alpha);
    FormalElement twisted = gauge_apply(g, kw.a, kw.omega);
    FormalElement sum;
    for (const auto& [key, coeff] : kw.a.terms()) sum.add(g, key.first, key.second, coeff);
    for (const auto& [key, coeff] : twisted.terms()) sum.add(g, key.first, key.second, coeff);
    FormalElement expected;
    expected.add(g, mua, mua, 2.0);
    out.gauge_certifies = formal_equal(sum, expected);

    IMat proj = rep.matrix_for(mua) * rep.matrix_for(mua).transpose();
    out.projection_nonzero = !proj.isZero();
    return out;
}

MatrixCK restricted_rep(const MatrixCK& rep, const BoundaryPath& x) {
    const KGraph& g = rep.graph();
    if (rep.index_of(x) < 0) throw std::invalid_argument("restricted_rep: x not in the basis");

    // All distinct canonical shifts of a trajectory (finitely many).
    auto tails = [&](const BoundaryPath& y) {
        std::vector<BoundaryPath> out{bp_canonical(g, y)};
        std::vector<BoundaryPath> frontier = out;
        while (!frontier.empty()) {
            std::vector<BoundaryPath> next;
            for (const BoundaryPath& t : frontier) {
                ExtDegree d = bp_degree(g, t);
                for (int i = 1; i <= g.rank(); ++i) {
                    Degree ei = Degree::unit(g.rank(), i);
                    if (!ext_leq(ei, d)) continue;
                    BoundaryPath s = shift(g, t, ei);
                    bool known = false;
                    for (const BoundaryPath& o : out)
                        if (bp_equal(g, o, s)) known = true;
                    if (!known) {
                        out.push_back(s);
                        next.push_back(s);
                    }
                }
            }
            frontier = std::move(next);
        }
        return out;
    };

    std::vector<BoundaryPath> tx = tails(x);
    std::vector<BoundaryPath> cls;
    for (const BoundaryPath& y : rep.basis()) {
        bool related = false;
        for (const BoundaryPath& ty : tails(y)) {
            for (const BoundaryPath& t : tx)
                if (bp_equal(g, t, ty)) related = true;
            if (related) break;
        }
        if (related) cls.push_back(y);
    }
    return MatrixCK(g, std::move(cls));
}

namespace {

// Fraction-free Gaussian elimination rank over the integers.
int bareiss_rank(std::vector<std::vector<std::int64_t>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::int64_t prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

}  // namespace

int span_rank(const std::vector<IMat>& mats) {
    if (mats.empty()) return 0;
    std::vector<std::vector<std::int64_t>> rows;
    for (const IMat& m : mats) {
        std::vector<std::int64_t> r;
        r.reserve(static_cast<std::size_t>(m.size()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(std::move(r));
    }
    return bareiss_rank(std::move(rows));
}

int span_dimension(const MatrixCK& rep, const Degree& cap) {
    const KGraph& g = rep.graph();
    std::vector<IMat> mats;
    for (const Path& mu : all_paths_leq(g, cap))
        for (const Path& nu : all_paths_leq(g, cap)) {
            if (source_of(g, mu) != source_of(g, nu)) continue;
            mats.push_back(rep.matrix_for(mu) * rep.matrix_for(nu).transpose());
        }
    return span_rank(mats);
}

}  // namespace kg
