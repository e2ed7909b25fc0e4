#include <doctest.h>

#include <filesystem>
#include <random>

#include "hicl/bundle.hpp"
#include "hicl/io.hpp"
#include "hicl/pipeline.hpp"
#include "hicl/synth.hpp"

using namespace hicl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("hicl_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("bundle") {

TEST_CASE("save/load round-trip preserves scores exactly") {
    SynthConfig scfg;
    scfg.seed = 5;
    scfg.train_per_class = 6;
    scfg.test_per_class = 2;
    SynthData sd = make_planted(scfg);

    PipelineConfig cfg;
    cfg.method = TrainMethod::TDLR;
    cfg.c_grid = {1.0};
    cfg.seed = 5;
    PipelineResult res = run_training(sd.taxonomy, sd.train, cfg);

    TempDir tmp;
    save_bundle(res.bundle, tmp.path / "m");
    Bundle loaded = load_bundle(tmp.path / "m");

    CHECK(loaded.method == TrainMethod::TDLR);
    CHECK(loaded.taxonomy == res.bundle.taxonomy);
    CHECK(loaded.dim == res.bundle.dim);
    REQUIRE(loaded.models.size() == res.bundle.models.size());
    for (const auto& [n, m] : res.bundle.models) {
        const NodeModel& lm = loaded.models.at(n);
        CHECK(lm.C_used == m.C_used);
        CHECK(lm.weights == m.weights);  // 17-digit encoding is exact
    }

    SUBCASE("predictions through the reloaded bundle are byte-identical") {
        std::vector<BundlePrediction> a, b;
        for (const auto& x : sd.test.x) {
            a.push_back(bundle_predict(res.bundle, x));
            b.push_back(bundle_predict(loaded, x));
        }
        CHECK(predictions_to_text(a) == predictions_to_text(b));
    }

    SUBCASE("resave is byte-identical") {
        save_bundle(loaded, tmp.path / "m2");
        CHECK(read_text_file(tmp.path / "m" / "models.txt") ==
              read_text_file(tmp.path / "m2" / "models.txt"));
        CHECK(read_text_file(tmp.path / "m" / "taxonomy.txt") ==
              read_text_file(tmp.path / "m2" / "taxonomy.txt"));
    }
}

TEST_CASE("ecoc bundle round-trip") {
    Dataset ds = parse_svmlight("1 1:2 3:1\n2 1:-2 3:1\n1 1:2.2 3:1\n2 1:-1.8 3:1\n"
                                "1 1:1.9 3:1\n2 1:-2.1 3:1\n");
    Taxonomy tax = Taxonomy::from_edges({{0, 1}, {0, 2}});

    PipelineConfig cfg;
    cfg.method = TrainMethod::ECOC;
    cfg.c_grid = {1.0};
    cfg.codeword_bits = 8;
    cfg.split_ratio = 0.7;
    cfg.seed = 9;
    PipelineResult res = run_training(tax, ds, cfg);

    TempDir tmp;
    save_bundle(res.bundle, tmp.path / "e");
    Bundle loaded = load_bundle(tmp.path / "e");
    REQUIRE(loaded.codebook.has_value());
    CHECK(loaded.codebook->bits == res.bundle.codebook->bits);
    CHECK(loaded.codebook->seed == res.bundle.codebook->seed);
    for (const auto& x : ds.x)
        CHECK(bundle_predict(loaded, x).leaf == bundle_predict(res.bundle, x).leaf);

    SUBCASE("flat path column is the single leaf") {
        BundlePrediction p = bundle_predict(loaded, ds.x[0]);
        CHECK(p.path == std::vector<NodeId>{p.leaf});
    }
}

TEST_CASE("dimension overflow is rejected") {
    SynthConfig scfg;
    scfg.train_per_class = 4;
    scfg.test_per_class = 1;
    SynthData sd = make_planted(scfg);
    PipelineConfig cfg;
    cfg.method = TrainMethod::FlatLR;
    cfg.c_grid = {1.0};
    PipelineResult res = run_training(sd.taxonomy, sd.train, cfg);

    Dataset big = parse_svmlight("1 999:1\n");
    CHECK_THROWS_AS(check_dim(res.bundle, big), data_error);
    CHECK_NOTHROW(check_dim(res.bundle, sd.test));
}

TEST_CASE("predictions text round-trip") {
    std::vector<BundlePrediction> preds{{7, {0, 2, 7}}, {3, {3}}};
    std::string text = predictions_to_text(preds);
    ParsedPredictions parsed = parse_predictions(text);
    REQUIRE(parsed.leaves.size() == 2);
    CHECK(parsed.leaves[0] == 7);
    CHECK(parsed.paths[0] == std::vector<NodeId>{0, 2, 7});
    CHECK(parsed.paths[1] == std::vector<NodeId>{3});
}

TEST_CASE("pipeline: psi = 10 removes nothing and keeps the taxonomy") {
    SynthConfig scfg;
    scfg.seed = 2;
    scfg.train_per_class = 6;
    scfg.test_per_class = 1;
    SynthData sd = make_planted(scfg);

    PipelineConfig cfg;
    cfg.method = TrainMethod::GlobalINF;
    cfg.c_grid = {1.0};
    cfg.psi = 10.0;
    cfg.seed = 2;
    PipelineResult res = run_training(sd.taxonomy, sd.train, cfg);
    CHECK(res.plan.removed.empty());
    CHECK(res.bundle.taxonomy == sd.taxonomy);
    CHECK(res.report.size() == sd.taxonomy.node_count() - 1);
    for (const auto& row : res.report) CHECK(!row.flagged);
}

TEST_CASE("corrupt bundles are rejected") {
    TempDir tmp;
    fs::path dir = tmp.path / "b";
    write_text_file(dir / "taxonomy.txt", "0 1\n0 2\n");
    write_text_file(dir / "meta.txt", "method=tdlr\ndim=3\n");

    SUBCASE("truncated weight list") {
        write_text_file(dir / "models.txt", "node 1 C 1 nnz 2\n1:0.5\n");
        CHECK_THROWS_AS(load_bundle(dir), data_error);
    }
    SUBCASE("weight index out of range") {
        write_text_file(dir / "models.txt",
                        "node 1 C 1 nnz 1\n9:0.5\nnode 2 C 1 nnz 0\n");
        CHECK_THROWS_AS(load_bundle(dir), data_error);
    }
    SUBCASE("missing node model") {
        write_text_file(dir / "models.txt", "node 1 C 1 nnz 0\n");
        CHECK_THROWS_AS(load_bundle(dir), data_error);
    }
    SUBCASE("missing meta key") {
        write_text_file(dir / "meta.txt", "method=tdlr\n");
        write_text_file(dir / "models.txt", "node 1 C 1 nnz 0\nnode 2 C 1 nnz 0\n");
        CHECK_THROWS_AS(load_bundle(dir), data_error);
    }
    SUBCASE("well-formed minimal bundle loads") {
        write_text_file(dir / "models.txt",
                        "node 1 C 1 nnz 1\n1:0.5\nnode 2 C 1 nnz 0\n");
        Bundle b = load_bundle(dir);
        CHECK(b.models.at(1).weights[0] == 0.5);
        CHECK(b.models.at(2).degenerate);
    }
}

TEST_CASE("gzip-transparent file reading") {
    TempDir tmp;
    // Stored (uncompressed) gzip stream of "1 1:1\n2 1:-1\n" written by zlib.
    write_text_file(tmp.path / "plain.txt", "0 1\n0 2\n");
    CHECK(Taxonomy::parse(read_text_file(tmp.path / "plain.txt")).node_count() == 3);
    CHECK_THROWS_AS(read_text_file(tmp.path / "missing.txt"), data_error);
}

}  // TEST_SUITE
