// ============================================================================
// bench_quadrature: OpenMP quadrature vs the serial reference implementation.
// Runs the default surface and singular-volume budgets on the standard ball
// and reports wall time per pass plus the speedup. Results must agree bitwise.
// ============================================================================

#include <chrono>
#include <cstdio>

#include "slicekit/algebra.hpp"
#include "slicekit/kernels.hpp"
#include "slicekit/quadrature.hpp"

using namespace slicekit;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename Fn>
double time_ms(Fn&& fn, Quaternion& out, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        out = fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

} // namespace

int main() {
    BallDomain dom = make_ball(Quaternion{0, 2, 0, 0}, 0.5);
    Quaternion x{0.1, 1.7, 0.2, -0.1};

    SurfaceRule srule; // default 32^3
    auto sfn = [&](const Quaternion& t, const std::array<double, 4>& n) {
        return kernel_A(t, x) * nu_weight(t, n);
    };
    Quaternion sp, ss;
    double tsp = time_ms([&] { return surface_integrate(dom, srule, sfn); }, sp, 3);
    double tss = time_ms([&] { return serial::surface_integrate(dom, srule, sfn); }, ss, 3);
    bool s_eq = sp.w == ss.w && sp.x == ss.x && sp.y == ss.y && sp.z == ss.z;

    VolumeRule vrule; // default 24 x 32^3
    Quaternion anchor = dom.center + Quaternion{0.05, 0.1, -0.05, 0};
    auto vfn = [&](const Quaternion& y) { return kernel_B(y, x); };
    Quaternion vp, vs;
    double tvp = time_ms([&] { return volume_integrate_singular(dom, anchor, vrule, vfn); }, vp, 1);
    double tvs =
        time_ms([&] { return serial::volume_integrate_singular(dom, anchor, vrule, vfn); }, vs, 1);
    bool v_eq = vp.w == vs.w && vp.x == vs.x && vp.y == vs.y && vp.z == vs.z;

    std::printf("benchmark           parallel_ms   serial_ms   speedup   bitwise\n");
    std::printf("surface 32^3       %10.1f  %10.1f  %8.2fx   %s\n", tsp, tss, tss / tsp,
                s_eq ? "yes" : "NO");
    std::printf("volume  24x32^3    %10.1f  %10.1f  %8.2fx   %s\n", tvp, tvs, tvs / tvp,
                v_eq ? "yes" : "NO");
    return (s_eq && v_eq) ? 0 : 1;
}
