#pragma once

#include "hlmono/mesh.hpp"

#include <map>

namespace hlmono {

/// Which coordinates the operators are built from: the ambient positions (the
/// induced metric; z only for heisenberg2) or the flat parameter chart.
enum class Coordinates { ambient, chart };

/// Piecewise-linear calculus on a triangle mesh: per-element hat-function
/// gradients, lumped masses and cotangent edge weights. The cotangent stiffness
/// is exactly the Dirichlet form of the piecewise-constant gradients, so
/// sum_i m_i g_i (Lf)_i = -sum_t A_t grad g . grad f holds to round-off.
class WeakOperatorContext {
public:
    explicit WeakOperatorContext(const SurfaceMesh& mesh, Coordinates coords = Coordinates::ambient);

    const SurfaceMesh& mesh() const { return *mesh_; }
    Coordinates coordinates() const { return coords_; }
    int dim() const { return dim_; }

    double mass(int i) const { return masses_[i]; }
    const std::vector<double>& masses() const { return masses_; }
    double area(std::size_t t) const { return areas_[t]; }
    const std::vector<double>& areas() const { return areas_; }
    /// Cotangent weight (cot a + cot b) / 2 per mesh edge.
    const std::vector<double>& edge_weights() const { return weights_; }

    /// Gradient of the hat function of local vertex k on triangle t.
    const AVec& hat_gradient(std::size_t t, int k) const { return hat_[3 * t + k]; }
    /// Orthonormal basis of the element's tangent plane.
    const AVec& tangent_basis(std::size_t t, int k) const { return basis_[2 * t + k]; }

    AVec gradient(std::size_t t, double f0, double f1, double f2) const;
    AVec gradient(std::size_t t, const ScalarField& f) const;
    AVec project_tangent(std::size_t t, const AVec& w) const;

    /// Interior nodes are those not on a boundary edge.
    bool is_interior(int i) const { return !mesh_->is_boundary_node(i); }

private:
    const SurfaceMesh* mesh_;
    Coordinates coords_;
    int dim_;
    std::vector<double> masses_, areas_, weights_;
    std::vector<AVec> hat_, basis_;
};

TangentField surface_gradient(const WeakOperatorContext& ctx, const ScalarField& f);

/// Cotangent Laplacian divided by lumped mass, with the sign that gives
/// Laplacian(|x|^2) = 4 on a flat plane. Values at boundary nodes are not certified.
ScalarField laplace_beltrami(const WeakOperatorContext& ctx, const ScalarField& f);

struct TangentNormalSplit {
    AVec tangential;
    AVec normal;
};

TangentNormalSplit tangent_normal_split(const WeakOperatorContext& ctx, std::size_t element, const AVec& w);

/// -int grad(test) . V - int test s - sum_p test(p) weight(p); zero for exact
/// weak solutions of div V = s + sum weight delta_p.
double weak_divergence_residual(const WeakOperatorContext& ctx, const TangentField& V, const ScalarField& s,
                                const std::map<int, double>& point_weights, const ScalarField& test);

/// sum_t A_t grad f . grad g.
double dirichlet_pairing(const WeakOperatorContext& ctx, const ScalarField& f, const ScalarField& g);

/// Mass-weighted RMS over interior nodes of rho |Laplacian of the coordinates|,
/// which vanishes on minimal surfaces.
double minimality_residual(const SurfaceMesh& mesh);

}  // namespace hlmono
