#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "uwo/roots.hpp"

using namespace uwo;

namespace {
AVector avec(std::initializer_list<long> xs) {
    AVector v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}
}  // namespace

TEST_CASE("enumeration counts") {
    LeviSubgroup T2 = full_torus(2);
    CHECK(enumerate_P(T2).size() == 2);
    CHECK(enumerate_F(T2).size() == 3);
    CHECK(enumerate_L(T2).size() == 2);
    LeviSubgroup T3 = full_torus(3);
    CHECK(enumerate_P(T3).size() == 6);
    CHECK(enumerate_F(T3).size() == 13);  // ordered set partitions of 3
    CHECK(enumerate_L(T3).size() == 5);   // Bell(3)
    LeviSubgroup M(std::vector<IndexSet>{{0, 1}, {2}});
    CHECK(enumerate_P(M).size() == 2);
    // brute-force flag count: |P(M)| = (#blocks)! for n <= 6
    for (int s = 1; s <= 6; ++s) {
        LeviSubgroup T = full_torus(s);
        size_t fact = 1;
        for (int i = 2; i <= s; ++i) fact *= static_cast<size_t>(i);
        CHECK(enumerate_P(T).size() == fact);
    }
}

TEST_CASE("containment and P^Q enumeration") {
    LeviSubgroup T3 = full_torus(3);
    auto Ps = enumerate_P(T3);
    ParabolicSubgroup G3(std::vector<IndexSet>{{0, 1, 2}});
    for (const auto& P : Ps) CHECK(parabolic_contained(P, G3));
    ParabolicSubgroup Q(std::vector<IndexSet>{{0, 1}, {2}});
    int cnt = 0;
    for (const auto& P : Ps)
        if (parabolic_contained(P, Q)) ++cnt;
    CHECK(cnt == 2);
    CHECK(enumerate_P_in(T3, Q).size() == 2);
}

TEST_CASE("duality of weights and coroots, n <= 6") {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 6; ++n) {
        LeviSubgroup T = full_torus(n);
        auto Fs = enumerate_F(T);
        std::uniform_int_distribution<size_t> pick(0, Fs.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto& Q = Fs[pick(rng)];
            auto below = enumerate_P_in(T, Q);
            std::uniform_int_distribution<size_t> pickp(0, below.size() - 1);
            for (int t2 = 0; t2 < 4; ++t2) {
                const auto& P = below[pickp(rng)];
                RootData rd = root_data(P, Q);
                CHECK(static_cast<int>(rd.coroots.size()) == n - Q.num_blocks());
                for (size_t a = 0; a < rd.weights.size(); ++a)
                    for (size_t b = 0; b < rd.coroots.size(); ++b)
                        CHECK(inner(rd.weights[a], rd.coroots[b]) == Rational(a == b ? 1 : 0));
            }
        }
    }
}

TEST_CASE("theta covolume examples") {
    // GL(2): Gram(alpha^vee) = 2, lambda = (1,-1): theta = sqrt(2)/2
    ParabolicSubgroup B = parabolic_from_sizes({1, 1});
    ParabolicSubgroup G2 = parabolic_from_sizes({2});
    RootData rd = root_data(B, G2);
    CHECK(rd.covol2 == Rational(2));
    AVector lam = avec({1, -1});
    double theta = std::sqrt(to_double(rd.covol2));
    for (const auto& cr : rd.coroots) theta /= to_double(inner(lam, cr));
    CHECK(theta == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    // Q = P: empty product
    CHECK(root_data(B, B).covol2 == Rational(1));
    // GL(3): covolume^2 = 3, lambda = (2,0,-2): theta = sqrt(3)/4
    ParabolicSubgroup B3 = parabolic_from_sizes({1, 1, 1});
    ParabolicSubgroup G3 = parabolic_from_sizes({3});
    RootData rd3 = root_data(B3, G3);
    CHECK(rd3.covol2 == Rational(3));
    AVector lam3 = avec({2, 0, -2});
    double th3 = std::sqrt(to_double(rd3.covol2));
    for (const auto& cr : rd3.coroots) th3 /= to_double(inner(lam3, cr));
    CHECK(th3 == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-14));
}

TEST_CASE("cone indicators") {
    ParabolicSubgroup B = parabolic_from_sizes({1, 1});
    ParabolicSubgroup G2 = parabolic_from_sizes({2});
    CHECK(cone_indicator(ConeKind::Tau, B, G2, avec({1, -1})));
    CHECK(cone_indicator(ConeKind::TauHat, B, G2, avec({1, -1})));
    CHECK_FALSE(cone_indicator(ConeKind::Tau, B, G2, avec({0, 0})));
    CHECK_FALSE(cone_indicator(ConeKind::TauHat, B, G2, avec({0, 0})));
    ParabolicSubgroup B3 = parabolic_from_sizes({1, 1, 1});
    ParabolicSubgroup G3 = parabolic_from_sizes({3});
    AVector H = avec({1, 1, -2});
    CHECK_FALSE(cone_indicator(ConeKind::Tau, B3, G3, H));
    CHECK(cone_indicator(ConeKind::TauHat, B3, G3, H));
}

TEST_CASE("projections are block averages and idempotent") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 5;
        AVector H;
        for (int i = 0; i < n; ++i) H.push_back(Rational(num(rng), 1 + static_cast<long>(trial % 3)));
        ParabolicSubgroup Q(std::vector<IndexSet>{{0, 2}, {1, 3, 4}});
        AVector p1 = project_to_levi(H, Q);
        CHECK(project_to_levi(p1, Q) == p1);
        // block constancy
        CHECK(p1[0] == p1[2]);
        CHECK(p1[1] == p1[3]);
        CHECK(p1[3] == p1[4]);
        // orthogonality of the complement
        CHECK(is_zero(inner(sub(H, p1), p1)));
    }
}

TEST_CASE("weyl action") {
    Permutation id{0, 1};
    ParabolicSubgroup B = parabolic_from_sizes({1, 1});
    CHECK(weyl_conjugate(id, B) == B);
    Permutation s{1, 0};
    ParabolicSubgroup Bbar = weyl_conjugate(s, B);
    CHECK(Bbar.blocks[0] == IndexSet{1});
    CHECK(Bbar.blocks[1] == IndexSet{0});
    // Norm_W(M)/W^M has order 2 for GL(2) x GL(2) inside GL(4)
    LeviSubgroup M(std::vector<IndexSet>{{0, 1}, {2, 3}});
    CHECK(norm_w_mod_wm(M).size() == 2);
    LeviSubgroup M2(std::vector<IndexSet>{{0, 1}, {2}});
    CHECK(norm_w_mod_wm(M2).size() == 1);
    // W-invariance of the inner product
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 5;
        AVector u, v;
        for (int i = 0; i < n; ++i) {
            u.push_back(Rational(num(rng)));
            v.push_back(Rational(num(rng)));
        }
        Permutation w{0, 1, 2, 3, 4};
        std::shuffle(w.begin(), w.end(), rng);
        CHECK(inner(weyl_act(w, u), weyl_act(w, v)) == inner(u, v));
    }
}
