#include <doctest.h>

#include <cmath>
#include <set>

#include "hicl/data.hpp"

using namespace hicl;

TEST_SUITE("data") {

TEST_CASE("svmlight parsing") {
    Dataset ds = parse_svmlight("3 1:0.5 7:0.25\n");
    CHECK(ds.size() == 1);
    CHECK(ds.y[0] == 3);
    CHECK(ds.x[0].entries.size() == 2);
    CHECK(ds.dim >= 7);

    CHECK_THROWS_AS(parse_svmlight("3 7:0.25 1:0.5\n"), data_error);  // not ascending
    CHECK_THROWS_AS(parse_svmlight("3 1:0.5 1:0.25\n"), data_error);  // duplicate
    CHECK_THROWS_AS(parse_svmlight(""), data_error);                  // empty
    CHECK_THROWS_AS(parse_svmlight("3 1:abc\n"), data_error);
    CHECK_THROWS_AS(parse_svmlight("x 1:0.5\n"), data_error);
    CHECK_THROWS_AS(parse_svmlight("3 0:0.5\n"), data_error);         // index < 1

    SUBCASE("dim hint raises but never lowers dim") {
        CHECK(parse_svmlight("1 2:1\n", 10).dim == 10);
        CHECK(parse_svmlight("1 12:1\n", 10).dim == 12);
    }

    SUBCASE("label-only lines are zero vectors") {
        Dataset empty_vec = parse_svmlight("5\n", 3);
        CHECK(empty_vec.x[0].entries.empty());
    }

    SUBCASE("explicit zeros are dropped") {
        CHECK(parse_svmlight("1 1:0 2:3\n").x[0].entries.size() == 1);
    }
}

TEST_CASE("serialize round-trip") {
    std::string text = "3 1:0.5 7:0.25\n-2 2:1.5\n9\n";
    Dataset ds = parse_svmlight(text);
    Dataset again = parse_svmlight(serialize_svmlight(ds));
    REQUIRE(again.size() == ds.size());
    CHECK(again.y == ds.y);
    for (size_t i = 0; i < ds.size(); ++i) {
        REQUIRE(again.x[i].entries.size() == ds.x[i].entries.size());
        for (size_t j = 0; j < ds.x[i].entries.size(); ++j) {
            CHECK(again.x[i].entries[j].index == ds.x[i].entries[j].index);
            CHECK(again.x[i].entries[j].value == ds.x[i].entries[j].value);
        }
    }
}

TEST_CASE("tf-idf with l2 normalization") {
    SUBCASE("single document: idf = ln(1/1) = 0 everywhere") {
        Dataset ds = parse_svmlight("1 1:3 2:5\n");
        Dataset out = tfidf_l2(ds);
        CHECK(out.x[0].entries.empty());
    }

    SUBCASE("shared term zeroed, unique term carries the norm") {
        // d1={t1:1}, d2={t1:1, t2:1}: df(t1)=2 -> weight 0; d2 has unit norm on t2.
        Dataset ds = parse_svmlight("1 1:1\n2 1:1 2:1\n");
        Dataset out = tfidf_l2(ds);
        CHECK(out.x[0].entries.empty());
        REQUIRE(out.x[1].entries.size() == 1);
        CHECK(out.x[1].entries[0].index == 2);
        CHECK(out.x[1].entries[0].value == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("scaling a document leaves its output unchanged") {
        Dataset a = parse_svmlight("1 1:1 2:2\n2 2:1 3:4\n");
        Dataset b = parse_svmlight("1 1:7 2:14\n2 2:1 3:4\n");
        Dataset ta = tfidf_l2(a), tb = tfidf_l2(b);
        REQUIRE(ta.x[0].entries.size() == tb.x[0].entries.size());
        for (size_t j = 0; j < ta.x[0].entries.size(); ++j)
            CHECK(ta.x[0].entries[j].value ==
                  doctest::Approx(tb.x[0].entries[j].value).epsilon(1e-12));
    }

    SUBCASE("rows have norm 1 or 0") {
        Dataset ds = parse_svmlight("1 1:2 3:1\n2 2:4\n1 1:1 2:1 3:1\n2 4:9\n");
        Dataset out = tfidf_l2(ds);
        for (const auto& v : out.x) {
            double n = std::sqrt(v.squared_norm());
            CHECK((std::fabs(n - 1.0) < 1e-12 || n == 0.0));
        }
    }

    CHECK_THROWS_AS(tfidf_l2(parse_svmlight("1 1:-2\n")), data_error);
}

TEST_CASE("stratified split") {
    SUBCASE("exact proportion for a 10-example class") {
        Dataset ds = parse_svmlight(
            "5 1:1\n5 1:2\n5 1:3\n5 1:4\n5 1:5\n5 1:6\n5 1:7\n5 1:8\n5 1:9\n5 1:10\n");
        SplitResult s = split_train_validation(ds, 0.9, 42);
        CHECK(s.train.size() == 9);
        CHECK(s.validation.size() == 1);
    }

    SUBCASE("lone example always trains") {
        Dataset ds = parse_svmlight("1 1:1\n2 1:2\n2 1:3\n");
        for (uint64_t seed = 0; seed < 20; ++seed) {
            SplitResult s = split_train_validation(ds, 0.9, seed);
            bool found = false;
            for (size_t i = 0; i < s.train.size(); ++i)
                if (s.train.y[i] == 1) found = true;
            CHECK(found);
            for (size_t i = 0; i < s.validation.size(); ++i) CHECK(s.validation.y[i] != 1);
        }
    }

    SUBCASE("determinism and seed sensitivity") {
        Dataset ds;
        ds.dim = 1;
        for (int i = 0; i < 50; ++i) {
            ds.x.push_back({{{1, static_cast<double>(i + 1)}}, 1});
            ds.y.push_back(i % 5);
        }
        SplitResult a = split_train_validation(ds, 0.9, 7);
        SplitResult b = split_train_validation(ds, 0.9, 7);
        CHECK(serialize_svmlight(a.train) == serialize_svmlight(b.train));
        CHECK(serialize_svmlight(a.validation) == serialize_svmlight(b.validation));

        bool any_diff = false;
        for (uint64_t seed = 0; seed < 5 && !any_diff; ++seed) {
            SplitResult c = split_train_validation(ds, 0.9, seed);
            if (serialize_svmlight(c.train) != serialize_svmlight(a.train)) any_diff = true;
        }
        CHECK(any_diff);
    }

    SUBCASE("partition: train and validation recompose the dataset") {
        Dataset ds = parse_svmlight("1 1:1\n1 1:2\n2 1:3\n2 1:4\n3 1:5\n3 1:6\n3 1:7\n");
        SplitResult s = split_train_validation(ds, 0.7, 3);
        CHECK(s.train.size() + s.validation.size() == ds.size());
        std::multiset<double> orig, got;
        for (const auto& v : ds.x) orig.insert(v.entries[0].value);
        for (const auto& v : s.train.x) got.insert(v.entries[0].value);
        for (const auto& v : s.validation.x) got.insert(v.entries[0].value);
        CHECK(orig == got);
    }

    Dataset two = parse_svmlight("1 1:1\n1 1:2\n");
    CHECK_THROWS_AS(split_train_validation(two, 0.0, 1), data_error);
    CHECK_THROWS_AS(split_train_validation(two, 1.0, 1), data_error);
}

TEST_CASE("label validation names the offender") {
    Taxonomy tax = Taxonomy::from_edges({{0, 1}, {0, 2}, {1, 3}});
    CHECK_NOTHROW(validate_labels(parse_svmlight("3 1:1\n2 1:1\n"), tax));
    try {
        validate_labels(parse_svmlight("1 1:1\n"), tax);  // internal node, not a leaf
        FAIL("expected data_error");
    } catch (const data_error& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
    CHECK_THROWS_AS(validate_labels(parse_svmlight("42 1:1\n"), tax), data_error);
}

}  // TEST_SUITE
