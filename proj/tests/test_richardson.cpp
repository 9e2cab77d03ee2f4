#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "uwo/richardson.hpp"

using namespace uwo;

namespace {

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long expected_epsilon_count(const NilpotentOrbit& o) {
    long cnt = factorial(o.r);
    int prev = 0;
    for (int j : o.J) {
        cnt /= factorial(j - prev);
        prev = j;
    }
    return cnt;
}

// all ordered set partitions of {0..n-1}
std::vector<ParabolicSubgroup> all_semistandard(int n) { return enumerate_F(full_torus(n)); }

bool x_in_nilradical(const QMatrix& X, const ParabolicSubgroup& P) {
    for (int r = 0; r < X.rows(); ++r)
        for (int c = 0; c < X.cols(); ++c)
            if (!is_zero(X(r, c)) && P.block_of(r) >= P.block_of(c)) return false;
    return true;
}

}  // namespace

TEST_CASE("epsilon set counts") {
    CHECK(epsilon_set(NilpotentOrbit(Partition({2, 1}))).size() == 2);
    CHECK(epsilon_set(NilpotentOrbit(Partition({2, 2}))).size() == 1);
    for (int n = 1; n <= 6; ++n)
        CHECK(epsilon_set(NilpotentOrbit(Partition({n}))).size() == 1);
    for (int n = 1; n <= 7; ++n)
        for (const auto& p : all_partitions(n)) {
            NilpotentOrbit o(p);
            auto es = epsilon_set(o);
            CHECK(static_cast<long>(es.size()) == expected_epsilon_count(o));
            for (const auto& e : es) CHECK(e.valid());
        }
}

TEST_CASE("kernel and image flags") {
    NilpotentOrbit o(Partition({2, 1}));
    BasisLayout L(o);
    auto Pker = epsilon_to_parabolic(xi_kernel(o), L);
    CHECK(Pker.block_sizes() == std::vector<int>{2, 1});
    // kernel flag block 1 spans Ker X
    QMatrix X = L.standard_matrix();
    for (int i : Pker.blocks[0]) {
        for (int r = 0; r < 3; ++r) CHECK(is_zero(X(r, i)));
    }
    auto Pim = epsilon_to_parabolic(xi_image(o), L);
    CHECK(Pim.block_sizes() == std::vector<int>{1, 2});
    // zero orbit: unique epsilon, P = G
    NilpotentOrbit z(Partition({1, 1, 1}));
    BasisLayout Lz(z);
    auto es = epsilon_set(z);
    CHECK(es.size() == 1);
    CHECK(epsilon_to_parabolic(es[0], Lz).num_blocks() == 1);
}

TEST_CASE("bijection with brute force, n <= 7") {
    for (int n = 1; n <= 7; ++n) {
        auto parabolics = all_semistandard(n);
        for (const auto& p : all_partitions(n)) {
            NilpotentOrbit o(p);
            BasisLayout L(o);
            QMatrix X = L.standard_matrix();
            std::set<ParabolicSubgroup> image;
            for (const auto& e : epsilon_set(o)) {
                auto P = epsilon_to_parabolic(e, L);
                CHECK(x_in_nilradical(X, P));
                CHECK(richardson_orbit(P.block_sizes()) == p);
                image.insert(P);
            }
            CHECK(image.size() == epsilon_set(o).size());  // injective
            // brute force R(X)
            std::set<ParabolicSubgroup> brute;
            for (const auto& P : parabolics)
                if (x_in_nilradical(X, P) && richardson_orbit(P.block_sizes()) == p) brute.insert(P);
            CHECK(brute == image);
        }
    }
}

TEST_CASE("richardson map torsors, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& p : all_partitions(n)) {
            NilpotentOrbit o(p);
            BasisLayout L(o);
            LeviSubgroup M = kernel_levi(L);
            auto PM = enumerate_P(M);
            size_t fiber = norm_w_mod_wm(M).size();
            std::map<ParabolicSubgroup, size_t> counts;
            for (const auto& P : PM) {
                RichardsonImage ri = richardson_map(P, L);
                // image really is the conjugate by w
                CHECK(weyl_conjugate(ri.w, P) == ri.image);
                CHECK(x_in_nilradical(L.standard_matrix(), ri.image));
                CHECK(richardson_orbit(ri.image.block_sizes()) == p);
                counts[ri.image]++;
            }
            CHECK(counts.size() == epsilon_set(o).size());  // surjective
            for (const auto& [img, c] : counts) CHECK(c == fiber);
            if (o.is_simple()) CHECK(fiber == 1);
        }
    }
}

TEST_CASE("kernel flag maps to itself with identity") {
    NilpotentOrbit o(Partition({2, 1}));
    BasisLayout L(o);
    auto P0 = epsilon_to_parabolic(xi_kernel(o), L);
    RichardsonImage ri = richardson_map(P0, L);
    CHECK(ri.image == P0);
    for (size_t i = 0; i < ri.w.size(); ++i) CHECK(ri.w[i] == static_cast<int>(i));
}

TEST_CASE("LS map preserves inclusions, n <= 6") {
    for (int n = 2; n <= 6; ++n) {
        for (const auto& p : all_partitions(n)) {
            NilpotentOrbit o(p);
            BasisLayout L(o);
            LeviSubgroup M = kernel_levi(L);
            auto FM = enumerate_F(M);
            std::vector<RichardsonImage> images;
            for (const auto& Q : FM) images.push_back(ls_map(Q, L));
            for (size_t a = 0; a < FM.size(); ++a)
                for (size_t b = 0; b < FM.size(); ++b)
                    if (parabolic_contained(FM[a], FM[b])) CHECK(parabolic_contained(images[a].image, images[b].image));
            // images land in LS(X): contain an element of R(X)
            auto RX = richardson_set(o, L);
            for (const auto& ri : images) {
                bool contains_some = false;
                for (const auto& R : RX)
                    if (parabolic_contained(R, ri.image)) contains_some = true;
                CHECK(contains_some);
            }
        }
    }
}

TEST_CASE("adjacency data") {
    {
        NilpotentOrbit o(Partition({2, 1}));
        BasisLayout L(o);
        auto PM = enumerate_P(kernel_levi(L));
        REQUIRE(PM.size() == 2);
        AdjacencyData a = adjacency(PM[0], PM[1], L);
        CHECK(a.r1 == 1);
        CHECK(a.r2 == 1);
        CHECK(a.J1 == std::vector<int>{2});
        CHECK(a.J2 == std::vector<int>{1});
        CHECK(a.W1.size() == 1);
        CHECK(a.W2.size() == 1);
        CHECK(a.W3.size() == 1);
    }
    {
        NilpotentOrbit o(Partition({2, 2}));
        BasisLayout L(o);
        auto PM = enumerate_P(kernel_levi(L));
        REQUIRE(PM.size() == 2);
        AdjacencyData a = adjacency(PM[0], PM[1], L);
        CHECK(a.r2 == 0);
        CHECK(a.J2.empty());
    }
    {
        NilpotentOrbit o(Partition({3, 2, 1}));
        BasisLayout L(o);
        auto PM = enumerate_P(kernel_levi(L));
        // find the pair swapping the two largest flag steps (slots 0 and 1 of
        // the kernel ordering)
        ParabolicSubgroup P0 = epsilon_to_parabolic(xi_kernel(o), L);
        for (const auto& P : PM) {
            auto s = ordering_of(P, L);
            AdjacencyData a;
            if (s == std::vector<int>{1, 3, 2}) {
                a = adjacency(P0, P, L);  // swaps the two smallest steps
                CHECK(a.r1 == 1);
                CHECK(a.r2 == 1);
            } else if (s == std::vector<int>{2, 1, 3}) {
                a = adjacency(P0, P, L);  // swaps the two largest steps
                CHECK(a.r1 == 2);
                CHECK(a.r2 == 1);
            } else {
                continue;
            }
            CHECK(static_cast<int>(a.W1.size()) == a.r1);
            CHECK(static_cast<int>(a.W2.size()) == a.r2);
            CHECK(static_cast<int>(a.W3.size()) == a.r1);
        }
        // simple orbit: every adjacent pair has r2 > 0
        for (size_t i = 0; i < PM.size(); ++i)
            for (size_t j = 0; j < PM.size(); ++j) {
                if (i == j) continue;
                auto si = ordering_of(PM[i], L), sj = ordering_of(PM[j], L);
                int diffs = 0;
                for (size_t k = 0; k < si.size(); ++k)
                    if (si[k] != sj[k]) ++diffs;
                if (diffs != 2) continue;
                bool adjacent = true;
                for (size_t k = 0; k + 1 < si.size(); ++k)
                    if (si[k] != sj[k] && !(si[k] == sj[k + 1] && si[k + 1] == sj[k])) {
                        if (si[k] != sj[k] && (k + 1 >= si.size() || si[k + 1] == sj[k + 1])) adjacent = false;
                    }
                AdjacencyData a;
                try {
                    a = adjacency(PM[i], PM[j], L);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                CHECK(a.r2 > 0);
                CHECK(a.r1 > 0);
            }
    }
}
