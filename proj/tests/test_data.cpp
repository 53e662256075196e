// Copyright 2026 The qmlbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "oracles/euclid.hpp"
#include "qmlbench/common.hpp"
#include "qmlbench/datagen.hpp"
#include "qmlbench/dataset.hpp"
#include "qmlbench/prng.hpp"
#include "qmlbench/uci.hpp"

using namespace qmlbench;
using namespace qmlbench::data;

namespace {

std::size_t count_label(const Dataset& ds, int y)
{
    return static_cast<std::size_t>(std::count(ds.labels.begin(), ds.labels.end(), y));
}

const std::string repo_data = QMLBENCH_REPO_DATA_DIR;

} // namespace

TEST_CASE("ad hoc shapes")
{
    const auto alt = gen_adhoc(AdhocShape::Alternating);
    CHECK(alt.size() == 400);
    CHECK(count_label(alt, 0) == 200);
    CHECK(count_label(alt, 1) == 200);

    const auto sep = gen_adhoc(AdhocShape::Separable);
    CHECK(count_label(sep, 0) == 210);
    CHECK(count_label(sep, 1) == 190);

    const auto circ = gen_adhoc(AdhocShape::Circle);
    CHECK(count_label(circ, 1) == 112);
    CHECK(count_label(circ, 0) == 288);

    for (std::size_t i = 0; i < 400; ++i) {
        const double x0 = sep.features(static_cast<Eigen::Index>(i), 0);
        const double x1 = sep.features(static_cast<Eigen::Index>(i), 1);
        CHECK(x0 >= 0);
        CHECK(x1 <= 19);
        CHECK(sep.labels[i] == (x0 + x1 >= 20 ? 1 : 0));
    }
    CHECK(sep.feature_names == std::vector<std::string>{"f0", "f1"});
}

TEST_CASE("random shape is seeded")
{
    const auto a = gen_adhoc(AdhocShape::Random, 3);
    const auto b = gen_adhoc(AdhocShape::Random, 3);
    const auto c = gen_adhoc(AdhocShape::Random, 4);
    CHECK(a.labels == b.labels);
    CHECK(a.labels != c.labels);
    const auto ones = count_label(a, 1);
    CHECK(ones > 150);
    CHECK(ones < 250);
    CHECK(parse_adhoc_shape("circle") == AdhocShape::Circle);
    CHECK_THROWS(parse_adhoc_shape("square"));
}

TEST_CASE("mod_inverse")
{
    CHECK(mod_inverse(2, 5) == 3);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS(mod_inverse(4, 8));

    Rng rng(2024);
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p < 20000; ++p)
        if (is_prime(p))
            primes.push_back(p);
    for (int t = 0; t < 50; ++t) {
        const auto m = primes[rng.below(primes.size())];
        const auto a = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(m - 1)));
        const auto inv = mod_inverse(a, m);
        CHECK(inv == oracle::ext_euclid_inverse(a, m));
        CHECK((a * inv) % m == 1);
    }
}

TEST_CASE("is_prime")
{
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(7919));
    CHECK(is_prime(104729));
    CHECK_FALSE(is_prime(104727));
}

TEST_CASE("PRNG map examples")
{
    const auto p = PRNGParams::make(2, 0, 5);
    CHECK(p.a_inv == 3);
    CHECK(p.forward(1) == 3);
    CHECK(p.inverse(3) == 1);
    for (std::int64_t x = 0; x < 5; ++x)
        CHECK(p.inverse(p.forward(x)) == x);
    CHECK_THROWS(PRNGParams::make(4, 0, 5)); // a not prime
    CHECK_THROWS(PRNGParams::make(7, 0, 5)); // a >= m
}

TEST_CASE("PRNG round trip over the ad hoc grid")
{
    const auto p = PRNGParams::make(7919, 13, 104729);
    for (auto shape : {AdhocShape::Separable, AdhocShape::Circle}) {
        const auto d = gen_adhoc(shape);
        const auto fwd = prng_apply(d, p, PrngDirection::Forward);
        CHECK(fwd.labels == d.labels);
        CHECK(fwd.features != d.features);
        const auto back = prng_apply(fwd, p, PrngDirection::Inverse);
        CHECK(back.features == d.features);
    }
}

TEST_CASE("PRNG scale and range")
{
    Dataset d = Dataset::make("x", Matrix{{0.25, 1.5}, {3.75, 0.0}}, {0, 1});
    const auto p = PRNGParams::make(7919, 13, 104729);
    const auto fwd = prng_apply(d, p, PrngDirection::Forward, 100);
    const auto back = prng_apply(fwd, p, PrngDirection::Inverse, 100);
    CHECK((back.features - d.features).cwiseAbs().maxCoeff() < 1e-12);

    Dataset big = Dataset::make("x", Matrix{{5.0}}, {0});
    CHECK_THROWS(prng_apply(big, PRNGParams::make(2, 0, 5), PrngDirection::Forward));
    CHECK_THROWS(prng_apply(d, p, PrngDirection::Forward, 3)); // scale not a power of ten
}

TEST_CASE("UCI loaders")
{
    const auto wdbc = load_uci(UciKind::Wdbc, repo_data + "/wdbc.data");
    CHECK(wdbc.size() == 569);
    CHECK(wdbc.dims() == 30);
    CHECK(wdbc.classes() == std::vector<int>{0, 1});
    CHECK(count_label(wdbc, 1) == 212); // malignant

    const auto wine = load_uci(UciKind::Wine, repo_data + "/wine.data");
    CHECK(wine.size() == 178);
    CHECK(wine.dims() == 13);
    CHECK(wine.classes().size() == 3);
}

TEST_CASE("UCI loader rejects malformed rows with a line number")
{
    std::istringstream in("1,M,1,2,3\n");
    try {
        load_uci(UciKind::Wdbc, in, "trunc.data");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("trunc.data:1") != std::string::npos);
    }

    std::ostringstream row;
    row << "1,X";
    for (int i = 0; i < 30; ++i)
        row << ",1";
    std::istringstream bad_class("\n" + row.str() + "\n");
    try {
        load_uci(UciKind::Wdbc, bad_class, "cls.data");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("cls.data:2") != std::string::npos);
    }
    std::istringstream bad_num("1,abc,2,3,4,5,6,7,8,9,10,11,12,13\n");
    CHECK_THROWS_AS(load_uci(UciKind::Wine, bad_num), ParseError);
    CHECK_THROWS(parse_uci_kind("iris"));
}

TEST_CASE("train_test_split")
{
    const auto d = gen_adhoc(AdhocShape::Circle);
    const auto s = train_test_split(d, 0.33, 42);
    CHECK(s.test.size() == 132);
    CHECK(s.train.size() == 268);

    std::set<std::size_t> all(s.train_indices.begin(), s.train_indices.end());
    all.insert(s.test_indices.begin(), s.test_indices.end());
    CHECK(all.size() == 400);
    for (std::size_t k = 0; k < s.test_indices.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(s.test_indices[k]);
        CHECK(s.test.labels[k] == d.labels[s.test_indices[k]]);
        CHECK(s.test.features.row(static_cast<Eigen::Index>(k)) == d.features.row(i));
    }

    const auto again = train_test_split(d, 0.33, 42);
    CHECK(again.test_indices == s.test_indices);
    const auto other = train_test_split(d, 0.33, 12);
    CHECK(std::set<std::size_t>(other.test_indices.begin(), other.test_indices.end()) !=
          std::set<std::size_t>(s.test_indices.begin(), s.test_indices.end()));

    const auto tiny = Dataset::make("t", Matrix{{0.0}, {1.0}}, {0, 1});
    CHECK_THROWS(train_test_split(tiny, 0.1, 1)); // test partition rounds to zero
    CHECK_THROWS(train_test_split(tiny, 0.9, 1)); // train partition rounds to zero
}

TEST_CASE("hyperplane reduction")
{
    const auto d = gen_adhoc(AdhocShape::Separable);
    const auto model = fit_reduction_hyperplane(d);
    const auto all = reduce_near_hyperplane(d, model, std::numeric_limits<double>::infinity());
    CHECK(all.kept == 400);
    CHECK(all.dropped == 0);
    CHECK(all.dataset.features == d.features);

    std::size_t last = 0;
    for (double delta : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const auto r = reduce_near_hyperplane(d, model, delta);
        CHECK(r.kept + r.dropped == 400);
        CHECK(r.kept >= last);
        last = r.kept;
        for (Eigen::Index i = 0; i < r.dataset.features.rows(); ++i)
            CHECK(svm::hyperplane_distance(model, r.dataset.features.row(i).transpose()) <= delta);
    }

    // A hand-built hyperplane x0 = x1: only the diagonal has distance exactly 0.
    svm::TrainedSVM diag;
    diag.kernel = svm::KernelSpec::linear();
    diag.weights = Vector{{1.0, -1.0}};
    diag.bias = 0.0;
    const auto zero = reduce_near_hyperplane(d, diag, 0.0);
    CHECK(zero.kept == 20);
    for (Eigen::Index i = 0; i < zero.dataset.features.rows(); ++i)
        CHECK(zero.dataset.features(i, 0) == zero.dataset.features(i, 1));

    svm::TrainedSVM rbf;
    rbf.kernel = svm::KernelSpec::rbf(1.0);
    CHECK_THROWS(reduce_near_hyperplane(d, rbf, 1.0));
}

TEST_CASE("take_per_class keeps the first rows of each class")
{
    const auto d = gen_adhoc(AdhocShape::Separable);
    const auto t = take_per_class(d, 5);
    CHECK(t.size() == 10);
    CHECK(count_label(t, 0) == 5);
    CHECK(count_label(t, 1) == 5);
}

TEST_CASE("dataset CSV round trip")
{
    auto d = gen_adhoc(AdhocShape::Circle);
    d.features(0, 0) = 0.1 + 0.2; // a value that needs full precision
    std::stringstream ss;
    write_csv(ss, d);
    const auto back = read_csv(ss, "circle");
    CHECK(back.features == d.features);
    CHECK(back.labels == d.labels);
    CHECK(back.feature_names == d.feature_names);

    std::istringstream bad("a,b,label\n1,2\n");
    CHECK_THROWS_AS(read_csv(bad), ParseError);
}
