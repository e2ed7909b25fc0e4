#include "hicl/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hicl/io.hpp"

namespace hicl {

namespace {
constexpr double kWeightPruneThreshold = 1e-12;
}

std::string to_string(TrainMethod m) {
    switch (m) {
        case TrainMethod::TDLR: return "tdlr";
        case TrainMethod::TLF: return "tlf";
        case TrainMethod::BLF: return "blf";
        case TrainMethod::MLF: return "mlf";
        case TrainMethod::LevelINF: return "level-inf";
        case TrainMethod::GlobalINF: return "global-inf";
        case TrainMethod::FlatLR: return "flat-lr";
        case TrainMethod::ECOC: return "ecoc";
    }
    return "unknown";
}

TrainMethod parse_method(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "tdlr" || s == "td-lr") return TrainMethod::TDLR;
    if (s == "tlf") return TrainMethod::TLF;
    if (s == "blf") return TrainMethod::BLF;
    if (s == "mlf") return TrainMethod::MLF;
    if (s == "level-inf" || s == "levelinf") return TrainMethod::LevelINF;
    if (s == "global-inf" || s == "globalinf") return TrainMethod::GlobalINF;
    if (s == "flat-lr" || s == "flatlr" || s == "flat") return TrainMethod::FlatLR;
    if (s == "ecoc") return TrainMethod::ECOC;
    throw data_error("unknown method '" + name + "'");
}

bool is_hierarchical(TrainMethod m) {
    return m != TrainMethod::FlatLR && m != TrainMethod::ECOC;
}

namespace {

void prune_weights(WeightVector& w) {
    for (double& v : w)
        if (std::fabs(v) < kWeightPruneThreshold) v = 0.0;
}

std::string models_to_text(const Bundle& b) {
    std::vector<NodeId> ids;
    ids.reserve(b.models.size());
    for (const auto& [id, m] : b.models) {
        (void)m;
        ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());

    std::ostringstream os;
    for (NodeId id : ids) {
        const NodeModel& m = b.models.at(id);
        size_t nnz = 0;
        for (double v : m.weights)
            if (v != 0.0) ++nnz;
        os << "node " << id << " C " << format_g17(m.C_used) << " nnz " << nnz << '\n';
        bool first = true;
        for (size_t i = 0; i < m.weights.size(); ++i) {
            if (m.weights[i] == 0.0) continue;
            os << (first ? "" : " ") << (i + 1) << ':' << format_g17(m.weights[i]);
            first = false;
        }
        if (nnz > 0) os << '\n';
    }
    return os.str();
}

std::string meta_to_text(const std::map<std::string, std::string>& meta) {
    std::ostringstream os;
    for (const auto& [k, v] : meta) os << k << '=' << v << '\n';
    return os.str();
}

std::map<std::string, std::string> parse_meta(const std::string& text) {
    std::map<std::string, std::string> meta;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw data_error("corrupt meta line: " + line);
        meta[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return meta;
}

std::string codebook_to_text(const CodeBook& book) {
    std::ostringstream os;
    os << "seed " << book.seed << '\n';
    os << "bits " << book.bit_count() << '\n';
    os << "classes " << book.class_ids.size() << '\n';
    for (size_t c = 0; c < book.class_ids.size(); ++c) {
        os << book.class_ids[c] << ' ';
        for (uint8_t bit : book.bits[c]) os << (bit ? '1' : '0');
        os << '\n';
    }
    return os.str();
}

CodeBook parse_codebook(const std::string& text) {
    std::istringstream in(text);
    std::string key;
    CodeBook book;
    size_t bits = 0, classes = 0;
    if (!(in >> key >> book.seed) || key != "seed") throw data_error("corrupt codebook header");
    if (!(in >> key >> bits) || key != "bits") throw data_error("corrupt codebook header");
    if (!(in >> key >> classes) || key != "classes") throw data_error("corrupt codebook header");
    for (size_t c = 0; c < classes; ++c) {
        NodeId cls;
        std::string row;
        if (!(in >> cls >> row) || row.size() != bits)
            throw data_error("corrupt codebook row " + std::to_string(c));
        std::vector<uint8_t> bv(bits);
        for (size_t b = 0; b < bits; ++b) {
            if (row[b] != '0' && row[b] != '1') throw data_error("corrupt codebook bit");
            bv[b] = row[b] == '1';
        }
        book.class_ids.push_back(cls);
        book.bits.push_back(std::move(bv));
    }
    return book;
}

}  // namespace

Bundle make_bundle(TrainMethod method, const HierModel& hm,
                   std::map<std::string, std::string> meta) {
    Bundle b;
    b.method = method;
    b.taxonomy = hm.taxonomy;
    b.dim = hm.dim;
    b.models = hm.models;
    for (auto& [id, m] : b.models) {
        (void)id;
        prune_weights(m.weights);
    }
    b.meta = std::move(meta);
    b.meta["method"] = to_string(method);
    b.meta["dim"] = std::to_string(b.dim);
    return b;
}

Bundle make_ecoc_bundle(const EcocModel& em, const Taxonomy& leaf_taxonomy,
                        std::map<std::string, std::string> meta) {
    Bundle b;
    b.method = TrainMethod::ECOC;
    b.taxonomy = leaf_taxonomy;
    b.dim = em.dim;
    for (const NodeModel& m : em.bit_models) b.models.emplace(m.node, m);
    for (auto& [id, m] : b.models) {
        (void)id;
        prune_weights(m.weights);
    }
    b.codebook = em.book;
    b.meta = std::move(meta);
    b.meta["method"] = to_string(TrainMethod::ECOC);
    b.meta["dim"] = std::to_string(b.dim);
    b.meta["codeword_bits"] = std::to_string(em.book.bit_count());
    return b;
}

void save_bundle(const Bundle& bundle, const std::filesystem::path& dir) {
    // Render everything first so a failure cannot leave a partial bundle.
    const std::string tax_text = bundle.taxonomy.to_edge_list();
    const std::string meta_text = meta_to_text(bundle.meta);
    const std::string models_text = models_to_text(bundle);
    std::optional<std::string> codebook_text;
    if (bundle.codebook) codebook_text = codebook_to_text(*bundle.codebook);

    std::filesystem::create_directories(dir);
    write_text_file(dir / "taxonomy.txt", tax_text);
    write_text_file(dir / "meta.txt", meta_text);
    write_text_file(dir / "models.txt", models_text);
    if (codebook_text) write_text_file(dir / "codebook.txt", *codebook_text);
}

Bundle load_bundle(const std::filesystem::path& dir) {
    Bundle b;
    b.meta = parse_meta(read_text_file(dir / "meta.txt"));
    auto need = [&](const char* key) -> const std::string& {
        auto it = b.meta.find(key);
        if (it == b.meta.end())
            throw data_error("bundle meta.txt is missing key '" + std::string(key) + "'");
        return it->second;
    };
    b.method = parse_method(need("method"));
    b.dim = std::stoi(need("dim"));
    if (b.dim < 1) throw data_error("corrupt bundle: nonpositive dim");
    b.taxonomy = Taxonomy::parse(read_text_file(dir / "taxonomy.txt"));

    std::istringstream in(read_text_file(dir / "models.txt"));
    std::string tok;
    while (in >> tok) {
        if (tok != "node") throw data_error("corrupt models.txt: expected 'node', got '" + tok + "'");
        NodeModel m;
        size_t nnz = 0;
        std::string ckey, nkey;
        if (!(in >> m.node >> ckey >> m.C_used >> nkey >> nnz) || ckey != "C" || nkey != "nnz")
            throw data_error("corrupt models.txt header for a node");
        m.weights.assign(static_cast<size_t>(b.dim), 0.0);
        for (size_t i = 0; i < nnz; ++i) {
            std::string pair;
            if (!(in >> pair)) throw data_error("corrupt models.txt: truncated weight list");
            auto colon = pair.find(':');
            if (colon == std::string::npos)
                throw data_error("corrupt models.txt: bad pair '" + pair + "'");
            int idx = std::stoi(pair.substr(0, colon));
            double val = std::stod(pair.substr(colon + 1));
            if (idx < 1 || idx > b.dim)
                throw data_error("corrupt models.txt: weight index " + std::to_string(idx) +
                                 " out of range");
            m.weights[idx - 1] = val;
        }
        m.degenerate = nnz == 0;
        b.models.emplace(m.node, std::move(m));
    }

    if (b.method == TrainMethod::ECOC) {
        b.codebook = parse_codebook(read_text_file(dir / "codebook.txt"));
        if (b.codebook->bit_count() != static_cast<int>(b.models.size()))
            throw data_error("corrupt bundle: codebook bits do not match model count");
    } else {
        for (NodeId n : b.taxonomy.nonroot_nodes())
            if (!b.models.count(n))
                throw data_error("corrupt bundle: no model for node " + std::to_string(n));
    }
    return b;
}

BundlePrediction bundle_predict(const Bundle& bundle, const SparseVector& x) {
    BundlePrediction out;
    if (bundle.method == TrainMethod::ECOC) {
        std::vector<WeightVector> models(bundle.models.size());
        for (const auto& [bit, m] : bundle.models) {
            if (bit < 0 || static_cast<size_t>(bit) >= models.size())
                throw data_error("corrupt bundle: bit index " + std::to_string(bit) +
                                 " out of range");
            models[bit] = m.weights;
        }
        out.leaf = ecoc_predict(models, *bundle.codebook, x);
        out.path = {out.leaf};
        return out;
    }
    HierModel hm;
    hm.taxonomy = bundle.taxonomy;
    hm.models = bundle.models;
    hm.dim = bundle.dim;
    if (bundle.method == TrainMethod::FlatLR) {
        out.leaf = predict_flat(leaf_weights(hm), x);
        out.path = {out.leaf};
        return out;
    }
    TopdownPrediction p = predict_topdown(hm, x);
    out.leaf = p.leaf;
    out.path = std::move(p.path);
    return out;
}

void check_dim(const Bundle& bundle, const Dataset& ds) {
    for (const auto& v : ds.x)
        for (const auto& e : v.entries)
            if (e.index > bundle.dim)
                throw data_error("dimension overflow: feature index " + std::to_string(e.index) +
                                 " exceeds bundle dimension " + std::to_string(bundle.dim));
}

std::string predictions_to_text(const std::vector<BundlePrediction>& preds) {
    std::ostringstream os;
    for (const auto& p : preds) {
        os << p.leaf << '\t';
        for (size_t i = 0; i < p.path.size(); ++i) os << (i ? " " : "") << p.path[i];
        os << '\n';
    }
    return os.str();
}

ParsedPredictions parse_predictions(const std::string& text) {
    ParsedPredictions out;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        NodeId leaf;
        if (!(ls >> leaf))
            throw data_error("predictions line " + std::to_string(lineno) + ": no leaf id");
        std::vector<NodeId> path;
        NodeId n;
        while (ls >> n) path.push_back(n);
        out.leaves.push_back(leaf);
        out.paths.push_back(std::move(path));
    }
    return out;
}

}  // namespace hicl
