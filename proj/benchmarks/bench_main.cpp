// Timing comparison between the parallel kernels and their serial reference
// implementations on the suite graphs.
#include <chrono>
#include <cstdio>
#include <functional>

#include "tropjac/arrangement.hpp"
#include "tropjac/chip_firing.hpp"
#include "tropjac/lefschetz.hpp"
#include "tropjac/suite.hpp"
#include "tropjac/symd.hpp"
#include "tropjac/voronoi.hpp"

using namespace tropjac;

namespace {

double time_of(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, const std::function<void()>& parallel,
         const std::function<void()>& serial) {
    double tp = time_of(parallel);
    double ts = time_of(serial);
    std::printf("%-34s parallel %8.3fs   serial %8.3fs   speedup %5.2fx\n", name, tp, ts,
                tp > 0 ? ts / tp : 0.0);
}

} // namespace

int main() {
    JacobianData theta = jacobian_data(make_theta(Rat(1), Rat(1), Rat(1)));
    JacobianData k4 = jacobian_data(make_k4({Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)}));
    JacobianData dc4 = jacobian_data(
        make_doubled_c4({Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)}));
    JacobianData b3 = jacobian_data(make_bouquet({Rat(1), Rat(3, 2), Rat(2)}));

    std::printf("kernel timings, parallel vs serial reference\n\n");

    row("relevant_vectors k4", [&] { relevant_vectors(k4.gram, {}); },
        [&] { relevant_vectors_serial(k4.gram, {}); });

    row("wd_cells doubled_c4 d=2", [&] { wd_cells(dc4, 2); }, [&] { wd_cells_serial(dc4, 2); });

    {
        auto wd = wd_cells(theta, 1);
        ArrangementInput inp;
        inp.label = "wd";
        for (const auto& c : wd) inp.polys.push_back(c.poly);
        std::vector<ArrangementInput> inputs = {inp};
        row("refine theta W1", [&] { refine(inputs, theta.b); },
            [&] { refine_serial(inputs, theta.b); });
    }

    {
        Divisor d;
        d.add(make_point(theta.graph, 0, Rat(5, 24)), Int(1));
        d.add(make_point(theta.graph, 1, Rat(7, 24)), Int(1));
        row("rank_oracle theta deg 2", [&] { rank_oracle(theta.graph, d); },
            [&] { rank_oracle_serial(theta.graph, d); });
    }

    row("lefschetz theta d=1", [&] { lefschetz_check(theta, 1); },
        [&] { lefschetz_check_serial(theta, 1); });

    row("lefschetz bouquet3 d=2", [&] { lefschetz_check(b3, 2); },
        [&] { lefschetz_check_serial(b3, 2); });

    return 0;
}
