#include "netbn/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "netbn/error.hpp"

namespace netbn {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "netbn-model";
constexpr int kVersion = 1;

json cpt_to_json(const CptTable& table) {
    json rows = json::array();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        json config = json::array();
        for (std::size_t p = 0; p < table.parents.size(); ++p)
            config.push_back((i >> (table.parents.size() - 1 - p)) & std::size_t{1});
        rows.push_back({{"config", config},
                        {"p0", table.rows[i].p0},
                        {"p1", table.rows[i].p1},
                        {"filler", table.rows[i].filler}});
    }
    return {{"node", table.node}, {"parents", table.parents}, {"rows", rows}};
}

CptTable cpt_from_json(const json& j, const std::string& source) {
    CptTable table;
    table.node = j.at("node").get<int>();
    table.parents = j.at("parents").get<std::vector<int>>();
    const json& rows = j.at("rows");
    std::size_t expected = std::size_t{1} << table.parents.size();
    if (rows.size() != expected)
        throw ParseError(source, 0,
                         "table for node " + std::to_string(table.node) + " has " +
                             std::to_string(rows.size()) + " rows, expected " +
                             std::to_string(expected));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& r = rows[i];
        auto config = r.at("config").get<std::vector<int>>();
        for (std::size_t p = 0; p < config.size(); ++p) {
            int want = static_cast<int>(
                (i >> (table.parents.size() - 1 - p)) & std::size_t{1});
            if (p >= table.parents.size() || config[p] != want)
                throw ParseError(source, 0,
                                 "table for node " + std::to_string(table.node) +
                                     " has rows out of configuration order");
        }
        CptRow row;
        row.p0 = r.at("p0").get<double>();
        row.p1 = r.at("p1").get<double>();
        row.filler = r.at("filler").get<bool>();
        if (row.p0 < 0.0 || row.p1 < 0.0 || row.p0 + row.p1 != 1.0)
            throw ParseError(source, 0,
                             "table row for node " + std::to_string(table.node) +
                                 " does not sum to 1");
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace

std::string save_model(const Model& model) {
    json j;
    j["format"] = kFormat;
    j["version"] = kVersion;

    json events = json::array();
    for (const auto& e : model.matrix.events()) events.push_back(e.label);
    j["events"] = events;

    json failures = json::array();
    for (const auto& f : model.matrix.failures()) failures.push_back(f.label);
    j["failures"] = failures;

    json matrix = json::array();
    for (const auto& f : model.matrix.failures()) {
        json row = json::array();
        for (const auto& e : model.matrix.events())
            row.push_back(model.matrix.entry(f.index, e.index) ? 1 : 0);
        matrix.push_back(row);
    }
    j["matrix"] = matrix;

    json dag = json::array();
    for (int node = 1; node <= model.net.dag.node_count(); ++node)
        dag.push_back(model.net.dag.parents(node));
    j["dag"] = dag;

    json cpts = json::array();
    for (const auto& table : model.net.cpts) cpts.push_back(cpt_to_json(table));
    j["cpts"] = cpts;

    const Provenance& prov = model.provenance;
    json aug;
    aug["k"] = prov.spec.k;
    aug["a"] = prov.spec.a;
    aug["normalized"] = prov.spec.normalize;
    aug["mode"] = prov.mode == CountMode::deterministic ? "deterministic" : "sampled";
    if (prov.seed) aug["seed"] = *prov.seed;
    aug["counts"] = prov.population.counts;
    aug["total"] = prov.population.total;
    aug["window"] = prov.window;
    j["augmentation"] = aug;

    return j.dump(2) + "\n";
}

Model load_model(const std::string& text, const std::string& source_name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source_name, 0, e.what());
    }

    try {
        if (!j.is_object() || j.value("format", "") != kFormat)
            throw ParseError(source_name, 0, "not a netbn-model file");
        if (j.value("version", 0) != kVersion)
            throw ParseError(source_name, 0,
                             "unsupported model version " +
                                 std::to_string(j.value("version", 0)));

        auto event_labels = j.at("events").get<std::vector<std::string>>();
        auto failure_labels = j.at("failures").get<std::vector<std::string>>();
        auto entries =
            j.at("matrix").get<std::vector<std::vector<std::uint8_t>>>();
        EventFailureMatrix matrix(event_labels, failure_labels, std::move(entries));

        EventDag dag(matrix.events());
        const json& parents = j.at("dag");
        if (parents.size() != event_labels.size())
            throw ParseError(source_name, 0, "dag entry count mismatch");
        for (std::size_t i = 0; i < parents.size(); ++i)
            for (int p : parents[i].get<std::vector<int>>())
                dag.add_edge(p, static_cast<int>(i + 1));

        std::vector<CptTable> cpts;
        const json& jcpts = j.at("cpts");
        if (jcpts.size() != event_labels.size())
            throw ParseError(source_name, 0, "table count mismatch");
        for (std::size_t i = 0; i < jcpts.size(); ++i) {
            CptTable table = cpt_from_json(jcpts[i], source_name);
            if (table.node != static_cast<int>(i + 1))
                throw ParseError(source_name, 0, "tables out of node order");
            if (table.parents != dag.parents(table.node))
                throw ParseError(source_name, 0,
                                 "table parents disagree with the structure for node " +
                                     std::to_string(table.node));
            cpts.push_back(std::move(table));
        }

        const json& aug = j.at("augmentation");
        Provenance prov;
        prov.spec.k = aug.at("k").get<double>();
        prov.spec.a = aug.at("a").get<double>();
        prov.spec.normalize = aug.at("normalized").get<bool>();
        prov.spec.n = matrix.failure_count();
        std::string mode = aug.at("mode").get<std::string>();
        if (mode == "deterministic") {
            prov.mode = CountMode::deterministic;
        } else if (mode == "sampled") {
            prov.mode = CountMode::sampled;
        } else {
            throw ParseError(source_name, 0, "unknown count mode '" + mode + "'");
        }
        if (aug.contains("seed")) prov.seed = aug.at("seed").get<std::uint64_t>();
        prov.population.counts = aug.at("counts").get<std::vector<long long>>();
        prov.population.total = aug.at("total").get<long long>();
        prov.window = aug.at("window").get<int>();
        if (static_cast<int>(prov.population.counts.size()) != matrix.failure_count())
            throw ParseError(source_name, 0, "count entry mismatch");

        return Model{std::move(matrix), BayesNet{std::move(dag), std::move(cpts)},
                     std::move(prov)};
    } catch (const json::exception& e) {
        throw ParseError(source_name, 0, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(source_name, 0, e.what());
    }
}

void save_model_file(const Model& model, const std::string& path) {
    write_text_file(path, save_model(model));
}

Model load_model_file(const std::string& path) {
    return load_model(read_text_file(path), path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("cannot write '" + path + "'");
}

}  // namespace netbn
