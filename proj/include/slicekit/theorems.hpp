#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "slicekit/algebra.hpp"
#include "slicekit/config.hpp"
#include "slicekit/diffeo.hpp"
#include "slicekit/quadrature.hpp"
#include "slicekit/slice.hpp"

namespace slicekit {

// ============================================================================
// Verification checks
//
// Each check builds a residual that the corresponding identity says is zero
// (or measures a convergence order / spread a claim says is controlled) and
// reports it against the case tolerance.  Checks never assert; run_suite and
// the CLI decide what failing reports mean.
// ============================================================================

enum class OpVariant { G, Ha, Du };

struct CheckCase {
    std::string suite;
    std::string id;
    std::string quantity = "residual"; // selects the measured aspect per check

    // Test functions.  Quaternion-lane checks use f/g as series in a(x):
    // f = f_left + f_right summed, likewise g; Clifford-lane checks use fm.
    // A nonempty builtin overrides the series ("one", "du_kernel_pair").
    QPowerSeries f_left, f_right, g_left, g_right;
    MPowerSeries fm;
    std::string builtin;

    DiffeoMap a = diffeo_identity(3);
    BallDomain domain{Quaternion{0, 2, 0, 0}, 0.5};
    std::array<double, 16> moebius{1, 0, 0, 0, 0, 0, 0, 0,
                                   0, 0, 0, 0, 1, 0, 0, 0}; // a, b, c, d
    std::vector<Quaternion> points;   // quaternion-lane evaluation points
    std::vector<Paravector> mpoints;  // Clifford-lane evaluation points

    double tolerance = 1e-12;
    int surface_nodes = 32;
    int radial_nodes = 24;
    int contour_nodes = 256;
    double fd_step = 1e-5;
    bool richardson = true;
    bool exact_jets = true;
    std::uint64_t seed = 0x5EED;
};

struct VerificationReport {
    std::string suite;
    std::string case_id;
    std::string quantity;
    double residual = 0.0;
    double tolerance = 0.0;
    long long nodes = 0;
    double runtime_ms = 0.0;
    bool pass = false; // pass <=> residual <= tolerance
};

// f(x) vs the two-point slice combination across random axes.
// quantity: "reproduction" or "axis_spread".
VerificationReport check_representation(const CheckCase& c);

// Component extraction on a slice. quantity: "reassembly" (exact linear
// algebra) or "cr_order_defect" (max(0, 2 - fitted CR order)).
VerificationReport check_splitting(const CheckCase& c);

// max || H_a[f] || over the points for f a series in a(x).
VerificationReport check_power_series_kernel(const CheckCase& c);

// Slice Cauchy reproduction on the two boundary circles of an axially
// symmetric solid. quantity: "reproduction" or "independence_spread".
VerificationReport check_slice_cauchy(const CheckCase& c);

// Boundary + kernel-volume + operator-volume assembly vs f(x) + g(x) inside
// and 0 outside. quantity: "interior", "exterior", "refinement_quotient"
// (refined error / base error), or "identity_reduction" (Ha/Du assembly at
// a = identity vs the G assembly).
VerificationReport check_borel_pompeiu(const CheckCase& c, OpVariant variant);

// Boundary + kernel-volume terms only, for kernel-member test functions.
// Same quantities as check_borel_pompeiu.
VerificationReport check_cauchy_type(const CheckCase& c, OpVariant variant);

// Boundary integral vs its volume form. quantity: "identity", or
// "identity_reduction" as above.
VerificationReport check_stokes(const CheckCase& c, OpVariant variant);

// Convergence order of the two reported slots of the S^{-1} membership
// residual. quantity: "x_slot_order_defect", "s_slot_order_defect",
// "residual".
VerificationReport check_kernel_membership(const CheckCase& c);

// Moebius covariance residuals (variant G or Ha; Du is exercised through the
// du_relation suite and the Ha equivalence). quantity: "covariance" or
// "kernel_preservation".
VerificationReport check_conformal(const CheckCase& c, OpVariant variant);

// || D_u f - [(1 + vec a) d0 f - H_a f] || over random jets and points.
VerificationReport check_du_relation(const CheckCase& c);

// Runs every registered (or requested) suite with the config's parameters;
// reports are ordered by suite id, then by case construction order.
std::vector<VerificationReport> run_suite(const RunConfig& cfg);

// "text": aligned table with real timings. "csv": exactly
// suite,case,quantity,residual,tolerance,nodes,runtime_ms,pass with
// runtime_ms zeroed so identical runs emit identical bytes.
std::string emit_reports(const std::vector<VerificationReport>& reports,
                         const std::string& format);

} // namespace slicekit
