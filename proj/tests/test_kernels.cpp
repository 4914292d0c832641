#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "polariton/kernels.hpp"

using namespace polariton;

namespace {

ModelParams gas(double nu = 1.1) {
    ModelParams p;
    p.atom.gamma_cb = 1e-3;
    p.atom.density_ratio = nu;
    p.drive.omega_rabi = 0.25;
    p.drive.doppler = 100.0;
    p.drive.delta_d = -100.0;
    return p;
}

std::vector<ProbePoint> probes(int n) {
    std::vector<ProbePoint> q;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q.push_back({-100.0 + 0.2 * (i - n / 2) / n, 0.05 * (j - n / 2) / n});
    return q;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("chi grid: serial and parallel agree bit for bit") {
    const Susceptibility chi(ChiModel::Residue, gas());
    const auto q = probes(30);
    const auto a = serial::chi_grid(chi, q);
    const auto b = omp::chi_grid(chi, q);
    REQUIRE(a.size() == q.size());
    REQUIRE(b.size() == q.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(same_bits(a[i].real(), b[i].real()));
        CHECK(same_bits(a[i].imag(), b[i].imag()));
        CHECK(a[i] == chi(q[i]));
    }
}

TEST_CASE("quadrature grid: serial and parallel agree bit for bit") {
    const auto q = probes(6);
    const auto a = serial::quadrature_grid(gas(), q);
    const auto b = omp::quadrature_grid(gas(), q);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(same_bits(a[i].chi.real(), b[i].chi.real()));
        CHECK(same_bits(a[i].chi.imag(), b[i].chi.imag()));
        CHECK(a[i].evaluations == b[i].evaluations);
    }
}

TEST_CASE("resonance sweep: serial and parallel agree bit for bit") {
    std::vector<double> dd;
    for (int i = 0; i < 12; ++i) dd.push_back(-20.0 - 20.0 * i);
    const auto a = serial::resonance_sweep(gas(), dd);
    const auto b = omp::resonance_sweep(gas(), dd);
    REQUIRE(a.size() == dd.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].delta_d == dd[i]);
        CHECK(same_bits(a[i].vg_closed, b[i].vg_closed));
        CHECK(same_bits(a[i].vg_numeric, b[i].vg_numeric));
        CHECK(same_bits(a[i].dip_center, b[i].dip_center));
        const ResonancePoint r = resonance_point(gas(), dd[i]);
        CHECK(same_bits(r.vg_closed, a[i].vg_closed));
    }
}

TEST_CASE("for_each_index visits every index once and rethrows the lowest failure") {
    for (auto run : {&serial::for_each_index, &omp::for_each_index}) {
        std::vector<std::atomic<int>> hits(500);
        run(hits.size(), [&](std::size_t i) { ++hits[i]; });
        for (auto& h : hits) CHECK(h.load() == 1);

        try {
            run(200, [](std::size_t i) {
                if (i == 37 || i == 151) throw std::runtime_error(std::to_string(i));
            });
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "37");
        }
        CHECK_NOTHROW(run(0, [](std::size_t) { throw std::runtime_error("never"); }));
    }
    CHECK(omp::max_threads() >= 1);
}
