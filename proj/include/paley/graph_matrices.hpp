#pragma once

#include "paley/linalg.hpp"
#include "paley/pair_index.hpp"
#include "paley/paley_graph.hpp"

#include <string>

namespace paley {

/// The pair-indexed graph matrices built from the Seidel matrix, plus the
/// vertex-indexed diamond matrix.  Names T/U-r-s-t follow the source
/// decomposition of H^{2,2} and H^{2,1}H^{1,2}.
enum class Shape {
    T311, T301, T441, T431, T421, T422, T423, T411, T401,
    U321, U311,
    U431, U421, U422, U423, U411, U412, U413,
    U541, U531, U532, U521, U522, U523, U511, U512,
    DIAMOND,
};

const std::vector<Shape>& all_shapes();
std::string shape_name(Shape s);
Shape shape_from_name(const std::string& name);

/// Reference exponent b for the norm model ||.|| ~ a p^b of each shape.
double shape_norm_exponent(Shape s);

struct GraphMatrix {
    Shape shape;
    int64_t p = 0;
    MatrixXd data;  // pair-indexed, or p x p for DIAMOND
};

/// Dense construction straight from the entry formulas.
GraphMatrix build_graph_matrix(const PaleyGraph& g, Shape shape);

/// Single entry of a pair-indexed shape, straight from its formula.
double shape_entry(const MatrixXd& seidel, Shape shape, int a, int b, int c, int d);

struct SubspaceProjections {
    int64_t p = 0;
    MatrixXd p0, p1, p2;
};

/// P0 = projector onto constants, P1 onto {v_ij = u_i + u_j, <1,u> = 0}
/// (explicit basis + modified Gram-Schmidt), P2 the rest.
SubspaceProjections build_projections(int64_t p);

/// Matrix-free applications of the same projectors to a pair vector.
VectorXd apply_p0(int64_t p, const VectorXd& x);
VectorXd apply_p0p1(int64_t p, const VectorXd& x);
VectorXd apply_p2(int64_t p, const VectorXd& x);

/// Max-abs residual of the exact projector decompositions of T301 / T401.
double exact_decomposition_check(const PaleyGraph& g, Shape shape);

struct NormResult {
    double value = 0.0;
    bool converged = true;
    int iterations = 0;
};

/// Largest singular value of a dense matrix (symmetric-aware).
NormResult spectral_norm(const GraphMatrix& m, double tol);

/// Shape norm without materializing the matrix: dense eigensolve when
/// C(p,2) <= 2000, matrix-free power iteration beyond.
NormResult shape_norm(const PaleyGraph& g, Shape shape, double tol);

/// ||P_i M P_j|| for the pair-space projectors.
NormResult restricted_norm(const PaleyGraph& g, Shape shape, int i, int j, double tol);

/// Diamond graph matrix M_xy = 1{x != y}((S^2)_xy^2 - (p-2)) for any Seidel
/// input; Paley input gives exactly (p-3)(I - J).
GraphMatrix diamond_matrix(const PaleyGraph& g);
MatrixXd diamond_matrix_from_seidel(const MatrixXd& seidel);

/// Matrix-free pair-space operator for one shape (exact, any p).
class ShapeOp {
public:
    ShapeOp(const PaleyGraph& g, Shape shape);
    int64_t dim() const { return idx_.size(); }
    void apply(const VectorXd& x, VectorXd& y) const;
    void apply_transpose(const VectorXd& x, VectorXd& y) const;

private:
    void apply_impl(Shape s, const VectorXd& x, VectorXd& y) const;

    Shape shape_;
    int64_t p_;
    PairIndexing idx_;
    MatrixXd s_;    // Seidel
    MatrixXd s2_;   // S^2
    VectorXd srow_; // row sums of S
};

struct FkParams;  // pseudomoments.hpp

struct SchurResiduals {
    double h22 = 0.0;             // H^{2,2} direct vs graph-matrix sum
    double h21h12 = 0.0;          // H^{2,1}H^{1,2} direct vs corrected sum
    double h21h12_printed = 0.0;  // same against the source display, which
                                  // mis-expands the i in (L u R) cross terms
};

/// Rebuilds H^{2,2} and H^{2,1}H^{1,2} as weighted sums of the graph
/// matrices and compares entrywise with direct assembly.  The H^{2,1}H^{1,2}
/// display drops (a2 - a1 a2) a3 times [T301 + T311/2 + (U411+U421+U422)/4
/// + T401 - (T421+T422)/4]; the corrected sum restores it and is exact.
SchurResiduals schur_decomposition_residual(const PaleyGraph& g, const FkParams& alpha);

}  // namespace paley
