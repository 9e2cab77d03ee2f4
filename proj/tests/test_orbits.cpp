#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "uwo/layout.hpp"
#include "uwo/partition.hpp"

using namespace uwo;

TEST_CASE("transpose basics") {
    CHECK(transpose(Partition({3, 1})).parts == std::vector<int>{2, 1, 1});
    CHECK(transpose(Partition({5})).parts == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(transpose(Partition({2, 2, 1})).parts == std::vector<int>{3, 2});
    for (const auto& p : all_partitions(7)) CHECK(transpose(transpose(p)) == p);
}

TEST_CASE("richardson orbit via transpose oracle") {
    CHECK(richardson_orbit({2, 1}).parts == std::vector<int>{2, 1});
    CHECK(richardson_orbit({1, 1, 1, 1}).parts == std::vector<int>{4});
    CHECK(richardson_orbit({3, 2, 1}).parts == std::vector<int>{3, 2, 1});
    // order of the composition does not matter
    CHECK(richardson_orbit({1, 3, 2}) == richardson_orbit({3, 2, 1}));
    for (const auto& p : all_partitions(6)) {
        std::vector<int> comp = p.parts;
        CHECK(richardson_orbit(comp) == transpose(p));
    }
}

TEST_CASE("induction examples and transitivity") {
    CHECK(induce_orbit({1, 1, 1}, {Partition({1}), Partition({1}), Partition({1})}).parts == std::vector<int>{3});
    CHECK(induce_orbit({2, 1}, {Partition({1, 1}), Partition({1})}).parts == std::vector<int>{2, 1});
    // two-stage vs one-stage over all two-level chains, n <= 6
    for (int n = 2; n <= 6; ++n) {
        // compositions of n
        std::vector<std::vector<int>> comps;
        std::function<void(int, std::vector<int>&)> rec = [&](int rem, std::vector<int>& cur) {
            if (rem == 0) {
                comps.push_back(cur);
                return;
            }
            for (int x = 1; x <= rem; ++x) {
                cur.push_back(x);
                rec(rem - x, cur);
                cur.pop_back();
            }
        };
        std::vector<int> cur;
        rec(n, cur);
        for (const auto& comp : comps) {
            // group the composition into two consecutive chunks: T0 -> L -> G
            for (size_t cut = 1; cut < comp.size(); ++cut) {
                for (size_t c2 = cut; c2 <= comp.size(); ++c2) (void)c2;
                // stage 1: each chunk of the composition induces a Richardson
                // orbit in its block; stage 2 induces to G
                std::vector<int> blocks;
                std::vector<Partition> orbs;
                size_t at = 0;
                std::vector<size_t> chunk_sizes = {cut, comp.size() - cut};
                for (size_t ch : chunk_sizes) {
                    std::vector<int> sub(comp.begin() + static_cast<long>(at), comp.begin() + static_cast<long>(at + ch));
                    at += ch;
                    int bn = 0;
                    for (int x : sub) bn += x;
                    blocks.push_back(bn);
                    orbs.push_back(richardson_orbit(sub));
                }
                CHECK(induce_orbit(blocks, orbs) == richardson_orbit(comp));
            }
        }
    }
}

TEST_CASE("orbit invariants") {
    NilpotentOrbit o(Partition({2, 1}));
    CHECK(o.r == 2);
    CHECK(o.J == std::vector<int>{1, 2});
    CHECK(o.inv == 2);
    CHECK(o.is_simple());
    CHECK_FALSE(NilpotentOrbit(Partition({4})).is_simple());
    CHECK(NilpotentOrbit(Partition({1})).is_simple());
    // simplicity iff strictly decreasing kernel Levi blocks
    for (const auto& p : all_partitions(7)) {
        NilpotentOrbit ob(p);
        auto blocks = ob.levi_block_sizes();
        bool strict = true;
        for (size_t i = 0; i + 1 < blocks.size(); ++i)
            if (blocks[i] <= blocks[i + 1]) strict = false;
        CHECK(ob.is_simple() == strict);
        int sum = 0;
        for (int j = 1; j <= ob.r; ++j) sum += j * ob.d[static_cast<size_t>(j)];
        CHECK(sum == p.n());
    }
}

TEST_CASE("standard nilpotent matrix") {
    {
        BasisLayout L(NilpotentOrbit(Partition({2})));
        QMatrix X = L.standard_matrix();
        CHECK(X(0, 1) == 1);
        CHECK(X(0, 0) == 0);
        CHECK(X(1, 0) == 0);
        CHECK(X(1, 1) == 0);
    }
    {
        BasisLayout L(NilpotentOrbit(Partition({1, 1})));
        CHECK(L.standard_matrix().is_zero());
    }
    {
        BasisLayout L(NilpotentOrbit(Partition({2, 1})));
        QMatrix X = L.standard_matrix();
        int nz = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!is_zero(X(i, j))) ++nz;
        CHECK(nz == 1);
        CHECK(X(L.position(1, 2, 1), L.position(2, 2, 1)) == 1);
    }
    // Jordan type oracle for every partition of n <= 7
    for (int n = 1; n <= 7; ++n)
        for (const auto& p : all_partitions(n)) {
            BasisLayout L{NilpotentOrbit(p)};
            CHECK(jordan_type(L.standard_matrix()) == p);
        }
    // kernel of X^k is the span of positions with i <= min(j,k)
    for (const auto& p : all_partitions(5)) {
        BasisLayout L{NilpotentOrbit(p)};
        QMatrix X = L.standard_matrix();
        QMatrix P = QMatrix::identity(L.n());
        for (int k = 1; k <= L.orbit().r; ++k) {
            P = P * X;
            auto ker = P.kernel();
            CHECK(static_cast<int>(ker.size()) == static_cast<int>(L.kernel_positions(k).size()));
        }
    }
}

TEST_CASE("grading order matches the basis order") {
    for (const auto& p : all_partitions(6)) {
        BasisLayout L{NilpotentOrbit(p)};
        for (int a = 0; a + 1 < L.n(); ++a) {
            auto va = L.at(a), vb = L.at(a + 1);
            if (va.i == vb.i && va.j == vb.j) continue;
            CHECK(L.grading(va.i, va.j) < L.grading(vb.i, vb.j));
        }
    }
}

TEST_CASE("centralizer dimension brute force") {
    {
        CentralizerDecomposition cd{BasisLayout{NilpotentOrbit(Partition({2, 1}))}};
        CHECK(cd.levi_blocks == std::vector<int>{1, 1});
        CHECK(cd.dim_gx == 5);
    }
    {
        CentralizerDecomposition cd{BasisLayout{NilpotentOrbit(Partition({4}))}};
        CHECK(cd.dim_gx == 4);
    }
    {
        CentralizerDecomposition cd{BasisLayout{NilpotentOrbit(Partition({1, 1, 1}))}};
        CHECK(cd.dim_gx == 9);
    }
    for (int n = 1; n <= 6; ++n)
        for (const auto& p : all_partitions(n)) {
            BasisLayout L{NilpotentOrbit(p)};
            CentralizerDecomposition cd(L);
            QMatrix X = L.standard_matrix();
            // kernel dimension of A -> AX - XA
            int nn = L.n();
            QMatrix sys(nn * nn, nn * nn);
            auto id = [nn](int r, int c) { return r * nn + c; };
            for (int r = 0; r < nn; ++r)
                for (int c = 0; c < nn; ++c)
                    for (int m = 0; m < nn; ++m) {
                        sys(id(r, c), id(r, m)) += X(m, c);
                        sys(id(r, c), id(m, c)) -= X(r, m);
                    }
            CHECK(static_cast<long>(sys.kernel().size()) == cd.dim_gx);
            // dim G_X = sum n_i^2
            long s = 0;
            for (int ni : L.orbit().levi_block_sizes()) s += static_cast<long>(ni) * ni;
            CHECK(cd.dim_gx == s);
            CHECK(cd.dim_gx == cd.dim_mx + cd.dim_nx);
        }
}
