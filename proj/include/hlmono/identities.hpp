#pragma once

#include "hlmono/angle.hpp"
#include "hlmono/calculus.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hlmono {

enum class NormKind { max_interior, weighted_l2, weak_pairing };

std::string norm_kind_name(NormKind k);

struct IdentityEntry {
    double value = 0.0;
    NormKind kind = NormKind::max_interior;
    double tolerance = 0.0;
    bool pass = false;
};

struct IdentityReport {
    std::map<std::string, IdentityEntry> entries;
    double excision_radius = 0.0;

    void add(const std::string& name, double value, NormKind kind, double tolerance);
    bool all_pass() const;
    /// Appends the entries of `other`; names are expected to be distinct.
    void merge(const IdentityReport& other);
};

/// Tolerances scale with the mesh size h; `floor` absorbs round-off on exact
/// meshes. Named overrides replace the computed tolerance outright.
struct IdentityTolerances {
    double max_interior_factor = 1e-2;
    double weak_factor = 1e-1;
    double floor = 1e-10;
    std::map<std::string, double> overrides;

    double resolve(const std::string& name, NormKind kind, double h) const;
};

struct TestFunction {
    std::string name;
    ScalarField values;
};

/// (1 - |z - center|^2 / radius^2)_+^3 in the ambient coordinates.
TestFunction ambient_bump(const SurfaceMesh& mesh, const AVec& center, double radius, std::string name);
/// Smooth bump of the gauge supported in lo < gauge < hi.
TestFunction gauge_annulus(const SurfaceMesh& mesh, double lo, double hi, std::string name);

/// An annulus in the gauge and an off-center bump, both clear of the boundary
/// and of origin preimages.
std::vector<TestFunction> default_tests(const SurfaceMesh& mesh);

/// Throws MeshError when the test does not vanish on boundary nodes.
void require_interior_support(const SurfaceMesh& mesh, const TestFunction& test);

struct PointwiseOptions {
    int excision_rings = 3;
    IdentityTolerances tolerances;
    std::vector<TestFunction> tests;  ///< empty selects default_tests
};

/// Kinematic identities of Legendrian surfaces, evaluated at the quadrature
/// points of every element outside the excised disks and the boundary ring:
///  unit_gradient_split:   |1 - |grad rho|^2 - |grad phi|^2 / rho^2|
///  phase_gradient_bound:  (|grad sigma / (1 + sigma^2)|^2 gauge^2 / 16 - 1)_+
///  normal_gauge_gradient: gauge |(grad gauge)^perp / gauge - J(grad sigma / (1 + sigma^2)) / 2|
/// and, when an angle form is given, the weak forms of
///  angle_rho2_coupling:   grad beta_H . grad rho^2 = Laplacian phi
///  angle_phi_coupling:    grad beta_H . grad phi = 1 - Laplacian(rho^2) / 4
///  angle_harmonic:        Laplacian beta = 0
/// Weak values are |pairing| / (reference magnitude), maximized over the tests.
IdentityReport check_pointwise_identities(const SurfaceMesh& mesh, const AngleForm* form,
                                          const PointwiseOptions& options = {});

/// Weak residual of
///   gauge^3 grad beta_H . grad gauge = gauge^2 sigma / sqrt(1 + sigma^2)
///                                      + div(gauge^4 grad sigma / (1 + sigma^2)) / 4
/// against `test`, relative to the magnitude of its terms.
double check_k2(const SurfaceMesh& mesh, const AngleForm& form, const TestFunction& test);

struct DivIdentityOptions {
    /// Dirac weight per origin preimage; missing entries use 2 pi.
    std::map<int, double> origin_weights;
    IdentityTolerances tolerances;
};

/// Weak residual of
///   div(arctan(sigma) grad beta_H + grad log gauge) = 4 |(grad gauge)^perp|^2 / gauge^2 + sum_p w_p delta_p
/// per test, and the near-origin diagnostic phi_cubic_order: the sup of
/// |phi| / r^3 over the inner quarter of a chart disk around each origin,
/// relative to the sup over the rest of the disk (bounded iff phi = O(r^3)).
IdentityReport check_div_identity(const SurfaceMesh& mesh, const AngleForm& form,
                                  const std::vector<TestFunction>& tests, const DivIdentityOptions& options = {});

}  // namespace hlmono
