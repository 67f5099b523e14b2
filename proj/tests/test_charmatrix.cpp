#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "zptrellis/charmatrix.hpp"
#include "zptrellis/random.hpp"

using namespace zpt;
using fx::cw;
using fx::rows;

namespace {

CharGenerator gen(const Codeword& x, std::size_t a, std::size_t b, std::uint32_t o1, std::uint32_t o2) {
    return CharGenerator{x, CyclicSpan::interval(a, b, x.size()), o1, o2};
}

const std::vector<CharTriple>& example_triples() {
    static const std::vector<CharTriple> t = [] {
        auto s = [](std::size_t a, std::size_t b) { return CyclicSpan::interval(a, b, 4); };
        return std::vector<CharTriple>{{s(0, 2), 3, 3}, {s(0, 2), 2, 2}, {s(0, 2), 1, 1}, {s(1, 3), 1, 2},
                                       {s(2, 3), 1, 1}, {s(1, 0), 2, 3}, {s(3, 0), 2, 2}, {s(3, 0), 1, 1},
                                       {s(2, 1), 3, 2}, {s(2, 1), 2, 1}};
    }();
    return t;
}

struct RandomCase {
    RingSpec spec;
    std::size_t n;
    std::vector<Codeword> m;
};

std::vector<RandomCase> random_cases(std::size_t count, std::uint64_t seed, std::size_t max_n = 6) {
    const RingSpec rings[] = {RingSpec(2, 2), RingSpec(2, 3), RingSpec(3, 2), RingSpec(3, 3)};
    std::mt19937_64 rng(seed);
    std::vector<RandomCase> out;
    while (out.size() < count) {
        const RingSpec& s = rings[rng() % std::size(rings)];
        std::size_t n = 1 + rng() % max_n, r = 1 + rng() % 3;
        auto m = random_code(s, n, r, rng);
        if (p_dimension(m) > 6) continue;
        out.push_back({s, n, m});
    }
    return out;
}

} // namespace

TEST_CASE("column exponents and support", "[charmatrix]") {
    auto y0 = lex_first_biproper_basis(fx::example_matrix());
    CHECK(column_order_exps(y0) == std::vector<std::uint32_t>{3, 2, 3, 2});
    CHECK(support(y0) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(column_order_exps(fx::z4, 2, rows(fx::z4, {{2, 2}})) == std::vector<std::uint32_t>{1, 1});
    CHECK(support(fx::z4, 2, rows(fx::z4, {{0, 2}})) == std::vector<std::size_t>{1});
    CHECK(support(fx::z4, 2, {}).empty());
    CHECK(column_order_exps(fx::z4, 3, rows(fx::z4, {{0, 1, 0}}))[0] == 0);
}

TEST_CASE("quadruple shifts carry the orders", "[charmatrix]") {
    auto g = gen(cw(fx::z8, {2, 1, 2, 1}), 0, 3, 2, 3);
    auto h = shift_quadruple(g, 1);
    CHECK(h == gen(cw(fx::z8, {1, 2, 1, 2}), 1, 0, 2, 3));
    CHECK(shift_quadruple(g, 0) == g);
    CHECK(shift_quadruple(gen(cw(fx::z8, {0, 0, 4, 4}), 2, 3, 1, 1), 2) == gen(cw(fx::z8, {4, 4, 0, 0}), 0, 1, 1, 1));
    for (std::size_t j = 0; j < 4; ++j) {
        auto s = shift_quadruple(g, j);
        CHECK(s.codeword[s.span.a()] == g.codeword[g.span.a()]);
        CHECK(s.codeword[s.span.b()] == g.codeword[g.span.b()]);
        CHECK(s.o1_exp == g.o1_exp);
        CHECK(s.o2_exp == g.o2_exp);
    }
}

TEST_CASE("naive characteristic matrix of the running example", "[charmatrix]") {
    auto x = naive_char_matrix(fx::z8, 4, fx::example_matrix());
    REQUIRE(x.rows.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(x.rows[i].triple() == example_triples()[i]);
    CHECK(validate_char_matrix(x).ok());
    CHECK(x.dimension == 5);
}

TEST_CASE("p-linear mode reproduces the reference matrix", "[charmatrix]") {
    CharMatrixOptions opts;
    opts.reduction.coefficients = CoefficientRange::PLinear;
    auto x = naive_char_matrix(fx::z8, 4, fx::example_matrix(), opts);
    auto want = rows(fx::z8, {{1, 6, 3, 0}, {2, 4, 6, 0}, {4, 0, 4, 0}, {0, 4, 2, 6}, {0, 0, 4, 4},
                              {1, 2, 1, 2}, {6, 0, 0, 2}, {4, 0, 0, 4}, {1, 2, 1, 2}, {6, 4, 2, 0}});
    REQUIRE(x.rows.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(x.rows[i].codeword == want[i]);
        CHECK(x.rows[i].triple() == example_triples()[i]);
    }
    // greedy p-linear descent is not canonical, so only the triples are shared with the incremental run
    CHECK(same_rows(x, algorithm_I(fx::z8, 4, fx::example_matrix(), opts), Membership::Triple));
}

TEST_CASE("incremental method on the running example", "[charmatrix]") {
    auto tr = algorithm_I_traced(fx::z8, 4, fx::example_matrix());
    CHECK(tr.iterations == 2);
    CHECK(same_rows(tr.matrix, naive_char_matrix(fx::z8, 4, fx::example_matrix())));
    CHECK(validate_char_matrix(tr.matrix).ok());
}

TEST_CASE("small characteristic matrices", "[charmatrix]") {
    auto x = naive_char_matrix(fx::z4, 2, rows(fx::z4, {{2, 2}}));
    REQUIRE(x.rows.size() == 2);
    CHECK(x.rows[0] == gen(cw(fx::z4, {2, 2}), 0, 1, 1, 1));
    CHECK(x.rows[1] == gen(cw(fx::z4, {2, 2}), 1, 0, 1, 1));
    CHECK(same_rows(x, algorithm_I(fx::z4, 2, rows(fx::z4, {{2, 2}}))));

    auto one = rows(fx::z9, {{3}});
    auto x1 = algorithm_I_traced(fx::z9, 1, one);
    CHECK(x1.iterations == 0);
    REQUIRE(x1.matrix.rows.size() == 1);
    CHECK(x1.matrix.rows[0].codeword == cw(fx::z9, {3}));

    auto full = rows(fx::z8, {{1, 3, 5, 7, 2}});
    auto a = algorithm_I(fx::z8, 5, full), b = naive_char_matrix(fx::z8, 5, full);
    CHECK(same_rows(a, b));
    CHECK(a.rows.size() == 14);  // 3+3+3+3+2
}

TEST_CASE("unpunctured input is rejected; the wrapper punctures", "[charmatrix]") {
    auto m = rows(fx::z4, {{0, 2, 2}});
    CHECK_THROWS_AS(naive_char_matrix(fx::z4, 3, m), std::invalid_argument);
    CHECK_THROWS_AS(algorithm_I(fx::z4, 3, m), std::invalid_argument);
    auto x = characteristic_matrix(fx::z4, 3, m);
    REQUIRE(x.rows.size() == 2);
    CHECK(x.rows[0] == gen(cw(fx::z4, {0, 2, 2}), 1, 2, 1, 1));
    CHECK(x.rows[1] == gen(cw(fx::z4, {0, 2, 2}), 2, 1, 1, 1));
    CHECK(validate_char_matrix(x).ok());
    CHECK(characteristic_matrix(fx::z4, 3, rows(fx::z4, {{0, 0, 0}})).rows.empty());
}

TEST_CASE("validation flags a duplicated row", "[charmatrix]") {
    auto x = naive_char_matrix(fx::z8, 4, fx::example_matrix());
    x.rows.push_back(x.rows.front());
    auto rep = validate_char_matrix(x);
    CHECK_FALSE(rep.ok());
    bool start_flag = false;
    for (const auto& v : rep.violations) start_flag = start_flag || v.find("start position") != std::string::npos;
    CHECK(start_flag);
}

TEST_CASE("random codes: incremental equals naive and the structural laws hold", "[charmatrix]") {
    CharMatrixOptions triple_mode;
    triple_mode.membership = Membership::Triple;
    for (const auto& rc : random_cases(120, 2024)) {
        INFO("ring Z_" << rc.spec.to_string() << " n=" << rc.n << " first row " << rc.m.front());
        auto naive = naive_char_matrix(rc.spec, rc.n, rc.m);
        auto inc = algorithm_I(rc.spec, rc.n, rc.m);
        CHECK(same_rows(naive, inc));
        CHECK(same_rows(naive, algorithm_I(rc.spec, rc.n, rc.m, triple_mode)));
        CHECK(same_rows(naive, naive_char_matrix(rc.spec, rc.n, rc.m, triple_mode)));
        auto rep = validate_char_matrix(inc);
        for (const auto& v : rep.violations) INFO(v);
        CHECK(rep.ok());

        const CodeSet code = p_span_enumerate(p_generators_from_matrix(rc.m));
        for (const auto& g : inc.rows) CHECK(code.count(g.codeword) == 1);

        // consecutive shift bases share at least k - k_j quadruples
        const std::size_t k = naive.dimension;
        std::vector<std::vector<CharGenerator>> per_shift(rc.n);
        for (std::size_t j = 0; j < rc.n; ++j) {
            std::vector<Codeword> mj;
            for (const auto& r : rc.m) mj.push_back(shift_left(r, j));
            for (const auto& y : lex_first_biproper_basis(mj).rows) per_shift[j].push_back(harvest(y, j));
        }
        for (std::size_t j = 0; j < rc.n; ++j) {
            std::size_t common = 0;
            for (const auto& g : per_shift[j])
                for (const auto& h : per_shift[(j + 1) % rc.n]) common += g == h;
            CHECK(common + naive.column_exps[j] >= k);
        }

        // cyclic covariance: rho_1 on every row gives the matrix of the right-shifted code
        std::vector<Codeword> shifted;
        for (const auto& r : rc.m) shifted.push_back(shift_right(r, 1));
        auto xs = naive_char_matrix(rc.spec, rc.n, shifted);
        CharMatrix moved = naive;
        for (auto& g : moved.rows) g = shift_quadruple(g, 1);
        CHECK(same_rows(moved, xs));
    }
}
