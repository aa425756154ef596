#include <doctest.h>

#include <cstdio>
#include <random>
#include <set>

#include "qtl/quadclass.hpp"

using namespace qtl::qf;

TEST_CASE("fundamental discriminants") {
    CHECK(fundamental_discriminant(457).value == 457);
    CHECK(fundamental_discriminant(127).value == 508);
    CHECK(fundamental_discriminant(-12883).value == -12883);
    CHECK(fundamental_discriminant(12).value == 12);   // core 3, 4*3
    CHECK(fundamental_discriminant(8).value == 8);     // core 2
    CHECK(fundamental_discriminant(-4).value == -4);   // core -1
    CHECK_THROWS(fundamental_discriminant(0));
    CHECK_THROWS(fundamental_discriminant(49));
}

TEST_CASE("dual discriminant pairs") {
    CHECK(dual_pair(fundamental_discriminant(-12883)).second.value == -64415);
    CHECK(dual_pair(fundamental_discriminant(508)).second.value == 2540);
    CHECK(dual_pair(fundamental_discriminant(4357)).second.value == 21785);
    CHECK_THROWS(dual_pair(fundamental_discriminant(10)));  // 5 | core
}

TEST_CASE("small imaginary class groups") {
    auto g23 = class_group(fundamental_discriminant(-23));
    CHECK(g23.h == 3);
    CHECK(g23.invariants_list == std::vector<long long>{3});

    auto g47 = class_group(fundamental_discriminant(-47));
    CHECK(g47.h == 5);
    CHECK(rank_p(g47, 5) == 1);
    CHECK(rank_p_from_torsion(g47, 5) == 1);

    auto g5 = class_group(fundamental_discriminant(5));
    CHECK(g5.h == 1);
    CHECK(rank_p(g5, 5) == 0);
}

TEST_CASE("table rank columns on spot-check rows") {
    CHECK(rank_p(class_group(fundamental_discriminant(-12883)), 5) == 1);
    CHECK(rank_p(class_group(fundamental_discriminant(-58424)), 5) == 2);
    CHECK(rank_p(class_group(fundamental_discriminant(4357)), 5) == 1);
}

TEST_CASE("discriminant bound is enforced") {
    CHECK_THROWS_AS(class_group(fundamental_discriminant(-12883), 100), std::invalid_argument);
}

TEST_CASE("composition satisfies the group axioms") {
    std::mt19937 rng(11);
    std::vector<long long> discs;
    for (long long m = 2; discs.size() < 10; ++m) {
        try {
            auto D = fundamental_discriminant(-m);
            if (std::abs(D.value) > 500) continue;
            discs.push_back(D.value);
        } catch (...) {}
    }
    for (long long m = 2; discs.size() < 20; ++m) {
        try {
            auto D = fundamental_discriminant(m);
            if (D.value > 500) continue;
            discs.push_back(D.value);
        } catch (...) {}
    }
    for (long long Dv : discs) {
        FundamentalDiscriminant D{Dv, 0};
        auto G = class_group(D);
        if (G.classes.empty()) continue;
        std::uniform_int_distribution<size_t> pick(0, G.classes.size() - 1);
        QuadForm id = canonical(principal_form(Dv));
        for (int t = 0; t < 50; ++t) {
            QuadForm x = G.classes[pick(rng)], y = G.classes[pick(rng)], z = G.classes[pick(rng)];
            auto xy_z = canonical(compose(canonical(compose(x, y)), z));
            auto x_yz = canonical(compose(x, canonical(compose(y, z))));
            REQUIRE(xy_z == x_yz);
            REQUIRE(canonical(compose(x, id)) == canonical(x));
            REQUIRE(canonical(compose(x, form_inverse(x))) == id);
        }
    }
}

TEST_CASE("h equals the raw reduced-form / cycle count for |D| < 5000") {
    // independent enumeration written against the definitions
    auto brute_h_neg = [](long long D) {
        long long count = 0;
        for (long long a = 1; 3 * a * a <= -D; ++a)
            for (long long b = -a; b <= a; ++b) {
                if (((b % 2) + 2) % 2 != (((D % 2) + 2) % 2)) continue;
                long long num = b * b - D;
                if (num % (4 * a) != 0) continue;
                long long c = num / (4 * a);
                if (c < a) continue;
                if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
                if ((b == -a || (a == c && b < 0))) continue;  // count each class once
                ++count;
            }
        return count;
    };
    int tested_neg = 0, tested_pos = 0;
    for (long long m = 2; m < 5000; ++m) {
        try {
            auto D = fundamental_discriminant(-m);
            if (-D.value >= 5000) continue;
            auto G = class_group(D);
            REQUIRE(G.h == brute_h_neg(D.value));
            long long prod = 1;
            for (auto d : G.invariants_list) prod *= d;
            REQUIRE(prod == G.h);
            ++tested_neg;
        } catch (const std::invalid_argument&) {}
    }
    for (long long m = 2; m < 1000; ++m) {
        try {
            auto D = fundamental_discriminant(m);
            if (D.value >= 5000) continue;
            auto G = class_group(D);
            // cycle count equals the class enumeration by construction; verify
            // the structure computation against it and against 5-torsion
            long long prod = 1;
            for (auto d : G.invariants_list) prod *= d;
            REQUIRE(prod == G.h);
            if (G.h % 5 == 0) REQUIRE(rank_p(G, 5) == rank_p_from_torsion(G, 5));
            ++tested_pos;
        } catch (const std::invalid_argument&) {}
    }
    CHECK(tested_neg > 1000);
    CHECK(tested_pos > 300);
}

TEST_CASE("rank from divisors equals brute-force 5-torsion when 5 | h") {
    for (long long m = 2; m < 5000; ++m) {
        try {
            auto D = fundamental_discriminant(-m);
            if (-D.value >= 5000) continue;
            auto G = class_group(D);
            if (G.h % 5) continue;
            REQUIRE(rank_p(G, 5) == rank_p_from_torsion(G, 5));
        } catch (const std::invalid_argument&) {}
    }
}

TEST_CASE("generator orders match the elementary divisors") {
    for (long long Dv : {-12883LL, -4027LL, -3299LL, 4357LL}) {
        auto G = class_group(fundamental_discriminant(Dv));
        REQUIRE(G.generators.size() == G.invariants_list.size());
        QuadForm id = canonical(principal_form(G.discriminant));
        for (size_t i = 0; i < G.generators.size(); ++i) {
            QuadForm x = id;
            long long o = 0;
            do {
                x = canonical(compose(x, G.generators[i]));
                ++o;
            } while (!(x == id) && o <= G.h);
            CHECK(o == G.invariants_list[i]);
        }
    }
}

TEST_CASE("pell4 fundamental solutions") {
    auto [x5, y5] = pell4(5);
    CHECK(x5 == 3);
    CHECK(y5 == 1);
    auto [x125, y125] = pell4(125);
    CHECK(x125 == 123);
    CHECK(y125 == 11);
    auto [x2, y2] = pell4(2);
    CHECK(x2 == 6);
    CHECK(y2 == 4);
    CHECK_THROWS(pell4(49));
}

TEST_CASE("pell4 minimality against brute force") {
    for (long long N = 2; N <= 60; ++N) {
        long long s = (long long)std::sqrt((double)N);
        if (s * s == N) continue;
        auto [x, y] = pell4(N);
        CHECK(x * x - N * y * y == 4);
        // brute: smallest y >= 1 with N y^2 + 4 a perfect square
        for (long long yy = 1;; ++yy) {
            long long t = N * yy * yy + 4;
            long long r = (long long)std::sqrt((double)t);
            while (r * r < t) ++r;
            while (r * r > t) --r;
            if (r * r == t) {
                CHECK(bigint(yy) == y);
                CHECK(bigint(r) == x);
                break;
            }
            REQUIRE(yy < 10000000);
        }
    }
}

TEST_CASE("cache round-trips and answers lookups") {
    std::string path = "qtl_test_cache.txt";
    std::remove(path.c_str());
    {
        ClassGroupCache cache(path);
        CHECK(rank5_cached(fundamental_discriminant(-47), &cache) == 1);
        CHECK(cache.lookup(-47).has_value());
    }
    ClassGroupCache reloaded(path);
    auto hit = reloaded.lookup(-47);
    REQUIRE(hit.has_value());
    CHECK(hit->first == 5);
    CHECK(rank5_cached(fundamental_discriminant(-47), &reloaded) == 1);
    std::remove(path.c_str());
}
