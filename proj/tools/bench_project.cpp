// Wall-clock comparison of the serial reference against the OpenMP kernel
// projection, with a bit-exactness audit of the two results.
//
//   bench_project [N] [s] [gamma]     defaults: N=32, s=5, gamma=pi/2

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tempus/operators.hpp"

using namespace tempus;

namespace {

double seconds(ExecPolicy exec, const OperatorSpec& spec,
               const EnergyBasis& basis, EnergyMatrix& out) {
    ProjectionOptions opt;
    opt.exec = exec;
    auto t0 = std::chrono::steady_clock::now();
    out = project_kernel(spec, basis, opt);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const int N = argc > 1 ? std::atoi(argv[1]) : 32;
    const double s = argc > 2 ? std::atof(argv[2]) : 5.0;
    SystemConfig cfg;
    cfg.gamma = argc > 3 ? std::atof(argv[3]) : M_PI / 2;

    EnergyBasis basis(cfg, N);
    auto spec = arrival_spec(cfg.gamma, s);
    std::cout << "kernel projection, " << basis.size() << "x" << basis.size()
              << " (N=" << N << ", s=" << s << ", gamma=" << cfg.gamma << ")\n";
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << " on "
              << omp_get_num_procs() << " processor(s)\n";
#else
    std::cout << "threads: 1 (built without OpenMP)\n";
#endif

    EnergyMatrix serial{basis, {}, 0.0}, parallel{basis, {}, 0.0};
    const double ts = seconds(ExecPolicy::Serial, spec, basis, serial);
    const double tp = seconds(ExecPolicy::OpenMP, spec, basis, parallel);
    const double diff = (serial.entries - parallel.entries).cwiseAbs().maxCoeff();

    std::cout << "serial reference: " << ts << " s\n"
              << "openmp kernel:    " << tp << " s\n"
              << "speedup:          " << ts / tp << "x\n"
              << "max |delta|:      " << diff << (diff == 0.0 ? " (bit-exact)" : "")
              << "\n";
    return diff == 0.0 ? 0 : 1;
}
