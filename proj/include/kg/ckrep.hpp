#ifndef KG_CKREP_HPP
#define KG_CKREP_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kg/aperiodicity.hpp"
#include "kg/boundary.hpp"

namespace kg {

using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CMat = Eigen::MatrixXcd;

/// The concrete partial-isometry family on the (finite) trajectory space:
/// S_lambda maps the basis vector of x to that of lambda.x when composable,
/// to zero otherwise. Each column has at most one nonzero entry, and the
/// adjoint acts by shifting off an initial segment. All arithmetic on these
/// matrices is exact integer arithmetic.
class MatrixCK {
public:
    MatrixCK(const KGraph& g, std::vector<BoundaryPath> basis);

    const KGraph& graph() const { return *g_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<BoundaryPath>& basis() const { return basis_; }

    /// Index of a trajectory in the basis, or -1.
    int index_of(const BoundaryPath& x) const;

    IMat matrix_for(const Path& lambda) const;
    IMat vertex_matrix(VertexId v) const;

private:
    const KGraph* g_;
    std::vector<BoundaryPath> basis_;
};

/// Builds the representation from the complete trajectory list. Requires
/// exact enumeration at every vertex; checks that no vertex acts as zero.
MatrixCK build_matrix_rep(const KGraph& g);

struct CkReport {
    bool passed = true;
    int checks = 0;
    std::vector<std::string> violations;

    void record(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            passed = false;
            violations.push_back(what);
        }
    }
};

/// Exact verification of the defining relations and their standard
/// consequences over all paths of degree <= cap: orthogonal vertex
/// projections, multiplicativity, the adjoint product expansion over
/// minimal common extensions, the vanishing of defect products over
/// certified exhaustive sets, commuting range projections, the
/// orthogonality rule inside <=n sets, and domination of range-projection
/// sums by vertex projections.
CkReport verify_ck_axioms(const MatrixCK& rep, const Degree& cap);
CkReport verify_ck_axioms(const MatrixCK& rep);

/// Least set containing E and closed under the exchange rule: for members
/// with matching degrees and sources, minimal common extensions propagate
/// tails onto the partners. Throws if the closure exceeds size_cap.
std::vector<Path> pi_closure(const KGraph& g, const std::vector<Path>& E,
                             std::size_t size_cap = 4096);

/// Finite formal combination sum a_{mu,nu} s_mu s_nu^*; per-term sources
/// must agree. Near-zero coefficients are pruned.
class FormalElement {
public:
    using Terms = std::map<std::pair<Path, Path>, std::complex<double>>;

    void add(const KGraph& g, const Path& mu, const Path& nu, std::complex<double> coeff);
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    static constexpr double kPruneTol = 1e-12;

private:
    Terms terms_;
};

bool formal_equal(const FormalElement& a, const FormalElement& b, double tol = 1e-12);

/// Coefficient twist a_{mu,nu} -> z^(d(mu)-d(nu)) a_{mu,nu} for z on the
/// k-torus; rejects |z_i| != 1.
FormalElement gauge_apply(const KGraph& g, const FormalElement& a,
                          const std::vector<std::complex<double>>& z);

CMat evaluate(const MatrixCK& rep, const FormalElement& a);
/// Exact evaluation for integer coefficients.
IMat evaluate_exact(const MatrixCK& rep, const FormalElement& a);

/// Operator (spectral) norm via singular values; documented tolerance 1e-9.
double operator_norm(const CMat& m);

struct QmapResult {
    Path tau;
    CMat qa;        // compressed image of a
    CMat qa0;       // compressed image of the degree-diagonal part
    double norm_a = 0;
    double norm_a0 = 0;
    double norm_qa = 0;
    double norm_qa0 = 0;
    bool qa_equals_qa0 = false;   // entrywise within 1e-12
    bool norm_preserved = false;  // |norm(qa0) - norm(a0)| <= 1e-9
    bool norm_decreasing = false; // norm(qa) <= norm(a) + 1e-9
};

/// The norm-preserving compression onto the corners cut out by the dressed
/// range projections sum S_{rho tau} S_{rho tau}^* over rho in H of a fixed
/// degree. Requires the graph aperiodic (holds verdict) and every nonzero
/// row path of a inside the <=N set.
QmapResult qmap(const MatrixCK& rep, const std::vector<Path>& H, const Degree& N,
                const FormalElement& a);

struct KernelWitness {
    FormalElement a;
    Path mu;
    Path nu;
    Path alpha;
    std::vector<std::complex<double>> omega;  // omega^(d(nu)-d(mu)) = -1
};

/// From an exact shift-equality witness (v, m, n): the element
/// s_{mu alpha} s_{mu alpha}^* - s_{nu alpha} s_{mu alpha}^* that the
/// trajectory representation kills while the gauge twist certifies it
/// nonzero. Throws when local periodicity is not established.
KernelWitness kernel_witness(const KGraph& g, VertexId v, const Degree& m, const Degree& n);

struct KernelWitnessCheck {
    bool representation_kills = false;  // exact integer zero matrix
    bool gauge_certifies = false;       // (id + gauge_omega)(a) = 2 s s*
    bool projection_nonzero = false;    // S_{mu alpha} S_{mu alpha}^* != 0
    bool ok() const { return representation_kills && gauge_certifies && projection_nonzero; }
};

KernelWitnessCheck verify_kernel_witness(const MatrixCK& rep, const KernelWitness& kw);

/// Restriction to the tail-equivalence class of x: the sub-representation
/// spanned by trajectories sharing a shifted tail with x. The class is
/// computed by exhaustive shift comparison and is closed under the family
/// action. No nonvanishing requirement is imposed on the result.
MatrixCK restricted_rep(const MatrixCK& rep, const BoundaryPath& x);

/// Exact dimension of span{S_mu S_nu^* : d <= cap, s(mu) = s(nu)} computed
/// by fraction-free elimination.
int span_dimension(const MatrixCK& rep, const Degree& cap);

/// Exact rank of a list of integer matrices viewed as vectors.
int span_rank(const std::vector<IMat>& mats);

}  // namespace kg

#endif  // KG_CKREP_HPP
