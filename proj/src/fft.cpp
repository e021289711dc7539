#include "tentlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace tentlab {

namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// FFTW planning is not thread-safe; execution with new-array execute is.
class PlanCache {
public:
    fftw_plan get(int dim, int size, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(dim, size, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second.get();
        std::size_t points = 1;
        for (int d = 0; d < dim; ++d) points *= static_cast<std::size_t>(size);
        std::vector<fftw_complex> a(points), b(points);
        const int dims[3] = {size, size, size};
        fftw_plan plan = fftw_plan_dft(dim, dims, a.data(), b.data(), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fft: planning failed");
        plans_.emplace(key, Plan(plan));
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, Plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void run(const Grid& grid, std::span<const cplx> in, std::span<cplx> out, int sign) {
    if (in.size() != grid.points() || out.size() != grid.points())
        throw std::invalid_argument("fft: buffer size does not match grid");
    fftw_plan plan = cache().get(grid.dim(), grid.size(), sign);
    std::vector<cplx> scratch(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(scratch.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void fft_forward(const Grid& grid, std::span<const cplx> in, std::span<cplx> out) {
    run(grid, in, out, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(grid.points());
    for (auto& c : out) c *= scale;
}

void fft_backward(const Grid& grid, std::span<const cplx> in, std::span<cplx> out) {
    run(grid, in, out, FFTW_BACKWARD);
}

}  // namespace tentlab
