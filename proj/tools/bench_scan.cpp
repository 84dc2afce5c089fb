// Times the coefficient-box stability scan in its serial and parallel forms
// and checks that both produce identical certificates.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cyverify/stability.hpp"

using namespace cyv;
using clk = std::chrono::steady_clock;

int main(int argc, char** argv) {
    long long radius = argc > 1 ? std::atoll(argv[1]) : 150;
    auto s = make_S1();
    Atom a{"ZA", 2, {{"w1", Rat(1)}, {"w2", Rat(-1)}}, {}};
    GradedClass pol = GradedClass::basis_element(s, 2, "w2");

    auto t0 = clk::now();
    auto serial = certify_extension(s, a, pol, radius, false);
    auto t1 = clk::now();
    auto parallel = certify_extension(s, a, pol, radius, true);
    auto t2 = clk::now();

    auto ms = [](auto d) {
        return std::chrono::duration_cast<std::chrono::microseconds>(d).count() / 1000.0;
    };
    bool same = serial.to_string() == parallel.to_string() &&
                serial.threats.size() == parallel.threats.size();
    for (std::size_t i = 0; same && i < serial.threats.size(); ++i)
        same = serial.threats[i] == parallel.threats[i];

    std::printf("box radius %lld: %lld candidates, %zu threats\n", radius,
                serial.box_checked, serial.threats.size());
    std::printf("serial   %10.3f ms\n", ms(t1 - t0));
    std::printf("parallel %10.3f ms\n", ms(t2 - t1));
    std::printf("agreement: %s\n", same ? "identical" : "MISMATCH");
    return same ? 0 : 1;
}
