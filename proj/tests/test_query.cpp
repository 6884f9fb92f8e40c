#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <set>

#include "cade/align.hpp"
#include "cade/errors.hpp"
#include "cade/query.hpp"
#include "support/models.hpp"

using namespace cade;
using cade::testing::toy_model;
using cade::testing::toy_vocab;

namespace {

EmbeddingMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    EmbeddingMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = normal(rng);
    return m;
}

}  // namespace

TEST_CASE("cosine basics") {
    Vector v(2);
    v << 3.0, 4.0;
    CHECK(cosine(v, v) == doctest::Approx(1.0));

    Vector e1(2), e2(2);
    e1 << 1.0, 0.0;
    e2 << 0.0, 1.0;
    CHECK(cosine(e1, e2) == doctest::Approx(0.0));

    Vector diag(2);
    diag << 1.0, 1.0;
    CHECK(cosine(diag, e1) == doctest::Approx(0.7071067811865475));

    Vector zero = Vector::Zero(2);
    CHECK_THROWS_AS(cosine(zero, e1), NumericError);
}

TEST_CASE("top_k within one slice returns the word itself first") {
    auto vocab = toy_vocab({"a", "b", "c", "d"});
    auto model = toy_model("X", vocab, random_matrix(4, 6, 1));
    Framework fw({&model});

    NeighborList list = fw.top_k("b", "X", "X", 1);
    REQUIRE(list.entries.size() == 1);
    CHECK(list.entries[0].first == vocab->id_of("b"));
    CHECK(list.entries[0].second == doctest::Approx(1.0));

    CHECK(fw.correspondence("c", "X", "X") == vocab->id_of("c"));
}

TEST_CASE("correspondence equals the head of top_k(5)") {
    auto vocab = toy_vocab({"a", "b", "c", "d", "e", "f"});
    auto m1 = toy_model("X", vocab, random_matrix(6, 5, 2));
    auto m2 = toy_model("Y", vocab, random_matrix(6, 5, 3));
    Framework fw({&m1, &m2});

    for (const auto& word : {"a", "c", "f"}) {
        NeighborList five = fw.top_k(word, "X", "Y", 5);
        CHECK(fw.correspondence(word, "X", "Y") == five.entries.front().first);
    }
}

TEST_CASE("neighbor ordering is a deterministic total order with id tie-breaks") {
    auto vocab = toy_vocab({"a", "b", "c", "d"});
    // rows b and c identical: equal similarity to anything, tie broken by id
    EmbeddingMatrix m(4, 3);
    m << 1, 0, 0,
         0, 1, 0,
         0, 1, 0,
         0, 0, 1;
    auto model = toy_model("X", vocab, m);
    Framework fw({&model});

    NeighborList list = fw.top_k("b", "X", "X", 0);
    REQUIRE(list.entries.size() == 4);
    CHECK(list.entries[0].first == vocab->id_of("b"));  // id 1 before id 2 at sim 1
    CHECK(list.entries[1].first == vocab->id_of("c"));
    CHECK(list.entries[0].second == doctest::Approx(1.0));
    CHECK(list.entries[1].second == doctest::Approx(1.0));

    NeighborList again = fw.top_k("b", "X", "X", 0);
    for (std::size_t i = 0; i < list.entries.size(); ++i)
        CHECK(list.entries[i].first == again.entries[i].first);
}

TEST_CASE("similarities are non-increasing and bounded") {
    auto vocab = toy_vocab({"a", "b", "c", "d", "e", "f", "g"});
    auto m1 = toy_model("X", vocab, random_matrix(7, 5, 4));
    auto m2 = toy_model("Y", vocab, random_matrix(7, 5, 5));
    Framework fw({&m1, &m2});

    NeighborList list = fw.top_k("a", "X", "Y", 0);
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        CHECK(list.entries[i].second <= 1.0);
        CHECK(list.entries[i].second >= -1.0);
        if (i) CHECK(list.entries[i].second <= list.entries[i - 1].second);
    }
}

TEST_CASE("exhaustive top_k returns every trained target token exactly once") {
    auto vocab = toy_vocab({"a", "b", "c", "d", "e"});
    std::vector<bool> trained{true, false, true, true, false};
    auto m1 = toy_model("X", vocab, random_matrix(5, 4, 6));
    auto m2 = toy_model("Y", vocab, random_matrix(5, 4, 7), 42, trained);
    Framework fw({&m1, &m2});

    NeighborList list = fw.top_k("a", "X", "Y", 0);
    REQUIRE(list.entries.size() == 3);
    std::set<TokenId> seen;
    for (const auto& [id, _] : list.entries) {
        CHECK(trained[static_cast<std::size_t>(id)]);
        CHECK(seen.insert(id).second);
    }

    SUBCASE("k larger than the trained vocabulary returns all of it") {
        CHECK(fw.top_k("a", "X", "Y", 50).entries.size() == 3);
    }
}

TEST_CASE("positive scaling of the target space preserves neighbor order") {
    auto vocab = toy_vocab({"a", "b", "c", "d", "e", "f"});
    EmbeddingMatrix target = random_matrix(6, 5, 8);
    auto m1 = toy_model("X", vocab, random_matrix(6, 5, 9));
    auto m2 = toy_model("Y", vocab, target);
    auto m2_scaled = toy_model("Y", vocab, EmbeddingMatrix(2.0 * target));

    Framework fw({&m1, &m2});
    Framework fw_scaled({&m1, &m2_scaled});
    for (const auto& word : {"a", "b", "f"}) {
        NeighborList base = fw.top_k(word, "X", "Y", 0);
        NeighborList scaled = fw_scaled.top_k(word, "X", "Y", 0);
        REQUIRE(base.entries.size() == scaled.entries.size());
        for (std::size_t i = 0; i < base.entries.size(); ++i)
            CHECK(base.entries[i].first == scaled.entries[i].first);
    }
}

TEST_CASE("orthogonal maps applied to both spaces preserve neighbor order") {
    auto vocab = toy_vocab({"a", "b", "c", "d", "e", "f", "g", "h"});
    EmbeddingMatrix src = random_matrix(8, 6, 10);
    EmbeddingMatrix dst = random_matrix(8, 6, 11);

    EmbeddingMatrix gauss = random_matrix(6, 6, 12);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
    EmbeddingMatrix R = qr.householderQ();

    auto m1 = toy_model("X", vocab, src);
    auto m2 = toy_model("Y", vocab, dst);
    auto r1 = toy_model("X", vocab, EmbeddingMatrix(src * R));
    auto r2 = toy_model("Y", vocab, EmbeddingMatrix(dst * R));

    Framework fw({&m1, &m2});
    Framework fw_rot({&r1, &r2});
    for (const auto& word : {"a", "d", "h"}) {
        NeighborList base = fw.top_k(word, "X", "Y", 0);
        NeighborList rotated = fw_rot.top_k(word, "X", "Y", 0);
        REQUIRE(base.entries.size() == rotated.entries.size());
        for (std::size_t i = 0; i < base.entries.size(); ++i)
            CHECK(base.entries[i].first == rotated.entries[i].first);
    }
}

TEST_CASE("OOV and untrained queries raise errors naming the slice") {
    auto vocab = toy_vocab({"a", "b", "c"});
    std::vector<bool> trained{true, false, true};
    auto model = toy_model("X", vocab, random_matrix(3, 4, 13), 42, trained);
    Framework fw({&model});

    CHECK_THROWS_AS(fw.top_k("zzz", "X", "X", 1), OovError);
    CHECK_THROWS_AS(fw.top_k("b", "X", "X", 1), OovError);  // untrained
    try {
        fw.top_k("zzz", "X", "X", 1);
    } catch (const OovError& e) {
        CHECK(e.slice == "X");
        CHECK(e.word == "zzz");
    }
    CHECK_THROWS_AS(fw.top_k("a", "X", "nope", 1), ConfigError);
}

TEST_CASE("mismatched compass fingerprints are rejected") {
    auto vocab = toy_vocab({"a", "b"});
    auto m1 = toy_model("X", vocab, random_matrix(2, 3, 14), 42);
    auto m2 = toy_model("Y", vocab, random_matrix(2, 3, 15), 43);
    CHECK_THROWS_WITH_AS(Framework({&m1, &m2}),
                         doctest::Contains("different compass fingerprint"), ConfigError);
}

TEST_CASE("solve_analogy is ranked top_k across slices") {
    auto vocab = toy_vocab({"a", "b", "c", "d"});
    auto m1 = toy_model("1990", vocab, random_matrix(4, 4, 16));
    auto m2 = toy_model("2000", vocab, random_matrix(4, 4, 17));
    Framework fw({&m1, &m2});

    NeighborList analogy = fw.solve_analogy("a", "1990", "2000", 3);
    NeighborList direct = fw.top_k("a", "1990", "2000", 3);
    REQUIRE(analogy.entries.size() == direct.entries.size());
    for (std::size_t i = 0; i < analogy.entries.size(); ++i)
        CHECK(analogy.entries[i] == direct.entries[i]);
}
