#pragma once

#include <gmmp/massey.hpp>
#include <gmmp/parser.hpp>
#include <gmmp/pipeline.hpp>
#include <gmmp/problem.hpp>

#include <string>
#include <vector>

namespace th {

inline gmmp::RingPtr ring_q4(gmmp::MonomialOrder o = gmmp::MonomialOrder::degrevlex) {
    return gmmp::PolyRing::free_ring({"x0", "x1", "x2", "x3"}, o);
}

inline gmmp::RingPtr ring_xy(gmmp::MonomialOrder o = gmmp::MonomialOrder::degrevlex) {
    return gmmp::PolyRing::free_ring({"x", "y"}, o);
}

inline gmmp::Polynomial P(const gmmp::RingPtr& r, const std::string& s) {
    return gmmp::parse_poly(s, r);
}

// the six determinantal generators, reference order
inline std::vector<gmmp::Polynomial> s_polys(const gmmp::RingPtr& r) {
    return {P(r, "x1^2 - x0*x2"),      P(r, "x0*x1 - x2^2"),
            P(r, "x0^2 - x1*x2"),      P(r, "x2^4 - x1*x3^3"),
            P(r, "x1*x2^3 - x0*x3^3"), P(r, "x0*x2^3 - x2*x3^3")};
}

inline gmmp::GradedMatrix matrix_of(const gmmp::RingPtr& r, const gmmp::FreeModule& target,
                                    const gmmp::FreeModule& source,
                                    const std::vector<std::vector<std::string>>& rows) {
    gmmp::GradedMatrix m(r, target, source);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.set_entry(i, j, P(r, rows[i][j]));
    return m;
}

// reference differential d2 : L2 -> L1 for the determinantal module
inline gmmp::GradedMatrix reference_d2(const gmmp::RingPtr& r) {
    const gmmp::FreeModule l1({2, 2, 2, 4, 4, 4});
    const gmmp::FreeModule l2({3, 3, 5, 5, 5, 5, 5, 5});
    return matrix_of(r, l1, l2,
                     {{"x0", "-x2", "x3^3", "0", "0", "x2^3", "0", "0"},
                      {"-x1", "x0", "0", "x3^3", "0", "0", "x2^3", "0"},
                      {"x2", "-x1", "0", "0", "x3^3", "0", "0", "x2^3"},
                      {"0", "0", "x1", "x0", "0", "x0", "x2", "0"},
                      {"0", "0", "-x2", "0", "x0", "-x1", "0", "x2"},
                      {"0", "0", "0", "-x2", "-x1", "0", "-x1", "-x0"}});
}

// reference differential d3 : L3 -> L2
inline gmmp::GradedMatrix reference_d3(const gmmp::RingPtr& r) {
    const gmmp::FreeModule l2({3, 3, 5, 5, 5, 5, 5, 5});
    const gmmp::FreeModule l3({6, 6, 6});
    return matrix_of(r, l2, l3,
                     {{"x3^3", "x2^3", "0"},
                      {"0", "-x3^3", "x2^3"},
                      {"-x0", "-x2", "0"},
                      {"x1", "x0", "0"},
                      {"-x2", "-x1", "0"},
                      {"0", "-x0", "x2"},
                      {"0", "x1", "-x0"},
                      {"0", "-x2", "x1"}});
}

inline std::string data_path(const std::string& name) {
    return std::string(GMMP_TEST_DATA_DIR) + "/" + name;
}

inline gmmp::Resolution mi_resolution() {
    auto r = ring_q4();
    return gmmp::minimal_resolution(gmmp::ModuleSpec::cyclic(r, s_polys(r)), 3);
}

} // namespace th
