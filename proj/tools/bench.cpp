// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: flatten, check_balanced, and the verify_grid fan-out.
// Also asserts that both paths produce identical results.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "fibword/cells.hpp"
#include "fibword/verify.hpp"
#include "fibword/words.hpp"

namespace {

double now_seconds() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

double time_call(const std::function<void()>& fn) {
    const double start = now_seconds();
    fn();
    return now_seconds() - start;
}

void report(const char* name, double serial, double parallel, bool identical) {
    std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n", name,
                serial * 1e3, parallel * 1e3, parallel > 0 ? serial / parallel : 0.0,
                identical ? "identical" : "MISMATCH");
    if (!identical) std::exit(1);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not enabled (pragmas inactive)\n");
#endif

    const fibword::Params params(2, 3);
    const std::uint64_t cap = fibword::kDefaultLengthCap;

    // flatten: a depth-2 refined, I-expanded structure over ~9.3M symbols.
    {
        const auto st = fibword::expand_all_I(fibword::refine(fibword::decompose(params, 16), 2));
        fibword::Word serial_word;
        fibword::Word parallel_word;
        const double ts = time_call([&] { serial_word = fibword::flatten_serial(st, cap); });
        const double tp = time_call([&] { parallel_word = fibword::flatten(st, cap); });
        std::printf("flatten: %zu cells over %llu symbols\n", st.cells.size(),
                    static_cast<unsigned long long>(st.parent_length));
        report("  flatten", ts, tp, serial_word == parallel_word);
    }

    // check_balanced: factor lengths up to 64 over the same large word.
    {
        const auto w = fibword::word_f(params, 16, cap);
        bool serial_ok = false;
        bool parallel_ok = false;
        const double ts = time_call([&] { serial_ok = fibword::check_balanced_serial(w, 64); });
        const double tp = time_call([&] { parallel_ok = fibword::check_balanced(w, 64); });
        std::printf("check_balanced: %zu symbols, factor lengths 1..64\n", w.size());
        report("  check_balanced", ts, tp, serial_ok == parallel_ok);
    }

    // verify_grid: identity sweep fan-out over (a, b, n, identity) tuples.
    {
        fibword::GridConfig config;
        config.a_lo = 2;
        config.a_hi = 4;
        config.b_lo = 2;
        config.b_hi = 4;
        config.n_max = 32;
        config.length_cap = 300'000;
        std::vector<fibword::VerificationReport> serial_reports;
        std::vector<fibword::VerificationReport> parallel_reports;
        const double ts = time_call([&] { serial_reports = fibword::verify_grid_serial(config); });
        const double tp = time_call([&] { parallel_reports = fibword::verify_grid(config); });
        bool identical = serial_reports.size() == parallel_reports.size();
        if (identical) {
            for (std::size_t i = 0; i < serial_reports.size(); ++i) {
                if (fibword::report_line(serial_reports[i]) !=
                    fibword::report_line(parallel_reports[i])) {
                    identical = false;
                    break;
                }
            }
        }
        std::printf("verify_grid: %zu checks, a,b in [2,4], cap 3e5\n", serial_reports.size());
        report("  verify_grid", ts, tp, identical);
    }

    return 0;
}
