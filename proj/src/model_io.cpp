#include "pqn/model_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pqn/errors.hpp"
#include "pqn/parse.hpp"

namespace pqn {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& origin, const std::string& what) {
    throw DomainError("model file " + origin + ": " + what);
}

std::vector<int> parse_index_key(const std::string& key, std::size_t arity, std::size_t m,
                                 const std::string& origin) {
    std::vector<int> idx;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            idx.push_back(std::stoi(part) - 1);  // keys are 1-based
        } catch (const std::exception&) {
            schema_error(origin, "bad index key '" + key + "'");
        }
    }
    if (idx.size() != arity)
        schema_error(origin, "index key '" + key + "' must have " + std::to_string(arity) +
                                 " entries");
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (idx[t] < 0 || idx[t] >= static_cast<int>(m))
            schema_error(origin, "index out of range in key '" + key + "'");
        if (t > 0 && idx[t] <= idx[t - 1])
            schema_error(origin, "index key '" + key + "' must be strictly increasing");
    }
    return idx;
}

ScalarExpr parse_entry(const std::string& text, const Chart& chart, const std::string& origin,
                       const std::string& where) {
    try {
        return parse_expr(text, chart);
    } catch (const ParseError& err) {
        schema_error(origin, where + ": " + err.what());
    }
}

std::string index_key(const std::vector<int>& idx) {
    std::string key;
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (t > 0) key += ",";
        key += std::to_string(idx[t] + 1);
    }
    return key;
}

}  // namespace

ModelDescriptor read_model(std::istream& in, const std::string& origin) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& err) {
        schema_error(origin, std::string("invalid JSON: ") + err.what());
    }
    for (const char* field : {"name", "coordinates", "poisson", "endomorphism", "phi"})
        if (!doc.contains(field)) schema_error(origin, std::string("missing field '") + field + "'");
    if (!doc["coordinates"].is_array() || doc["coordinates"].empty())
        schema_error(origin, "'coordinates' must be a non-empty array");

    std::vector<std::string> names;
    for (const auto& c : doc["coordinates"]) {
        if (!c.is_string()) schema_error(origin, "coordinate names must be strings");
        names.push_back(c.get<std::string>());
    }
    Chart chart(names);
    const std::size_t m = chart.dim();

    auto read_matrix = [&](const char* field) {
        const auto& rows = doc[field];
        if (!rows.is_array() || rows.size() != m)
            schema_error(origin, std::string("'") + field + "' must be an " + std::to_string(m) +
                                     "-row matrix");
        std::vector<std::vector<ScalarExpr>> mat;
        for (std::size_t i = 0; i < m; ++i) {
            if (!rows[i].is_array() || rows[i].size() != m)
                schema_error(origin, std::string("row ") + std::to_string(i + 1) + " of '" +
                                         field + "' needs " + std::to_string(m) + " entries");
            std::vector<ScalarExpr> row;
            for (std::size_t j = 0; j < m; ++j)
                row.push_back(parse_entry(rows[i][j].get<std::string>(), chart, origin,
                                          std::string(field) + "[" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + "]"));
            mat.push_back(std::move(row));
        }
        return mat;
    };

    auto pimat = read_matrix("poisson");
    BivectorField pi(chart);
    for (std::size_t i = 0; i < m; ++i) {
        if (!pimat[i][i].is_zero()) schema_error(origin, "poisson matrix has a nonzero diagonal");
        for (std::size_t j = i + 1; j < m; ++j) {
            if (!(pimat[i][j] + pimat[j][i]).is_zero())
                schema_error(origin, "poisson matrix is not antisymmetric at (" +
                                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            pi.add_entry(static_cast<int>(i), static_cast<int>(j), pimat[i][j]);
        }
    }

    auto nmat = read_matrix("endomorphism");
    EndomorphismField N(chart);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) N.set_entry(i, j, nmat[i][j]);

    DifferentialForm phi(chart, 3);
    if (!doc["phi"].is_object()) schema_error(origin, "'phi' must be an object");
    for (const auto& [key, value] : doc["phi"].items()) {
        auto idx = parse_index_key(key, 3, m, origin);
        phi.add_component(idx, parse_entry(value.get<std::string>(), chart, origin,
                                           "phi[" + key + "]"));
    }

    ModelDescriptor model{doc["name"].get<std::string>(),
                          m % 2 == 0 ? static_cast<int>(m / 2) : 0,
                          chart,
                          std::move(pi),
                          std::move(N),
                          std::move(phi)};

    if (doc.contains("scalars")) {
        for (const auto& [key, value] : doc["scalars"].items())
            model.scalars.emplace(key, parse_entry(value.get<std::string>(), chart, origin,
                                                   "scalars[" + key + "]"));
    }
    if (doc.contains("two_forms")) {
        for (const auto& [fname, entries] : doc["two_forms"].items()) {
            DifferentialForm w(chart, 2);
            for (const auto& [key, value] : entries.items()) {
                auto idx = parse_index_key(key, 2, m, origin);
                w.add_component(idx, parse_entry(value.get<std::string>(), chart, origin,
                                                 "two_forms[" + fname + "][" + key + "]"));
            }
            model.two_forms.emplace(fname, std::move(w));
        }
    }
    return model;
}

ModelDescriptor load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open model file '" + path + "'");
    return read_model(in, "'" + path + "'");
}

std::string model_to_json(const ModelDescriptor& model) {
    const Chart& chart = model.chart;
    const std::size_t m = chart.dim();
    ordered_json doc;
    doc["name"] = model.name;
    doc["coordinates"] = chart.names();

    ordered_json pimat = ordered_json::array();
    for (std::size_t i = 0; i < m; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m; ++j)
            row.push_back(to_string(model.pi.entry(static_cast<int>(i), static_cast<int>(j)),
                                    chart));
        pimat.push_back(std::move(row));
    }
    doc["poisson"] = std::move(pimat);

    ordered_json nmat = ordered_json::array();
    for (std::size_t i = 0; i < m; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m; ++j) row.push_back(to_string(model.N.entry(i, j), chart));
        nmat.push_back(std::move(row));
    }
    doc["endomorphism"] = std::move(nmat);

    ordered_json phi = ordered_json::object();
    for (const auto& [idx, c] : model.phi.components()) phi[index_key(idx)] = to_string(c, chart);
    doc["phi"] = std::move(phi);

    if (!model.scalars.empty()) {
        ordered_json scalars = ordered_json::object();
        for (const auto& [key, value] : model.scalars) scalars[key] = to_string(value, chart);
        doc["scalars"] = std::move(scalars);
    }
    if (!model.two_forms.empty()) {
        ordered_json forms = ordered_json::object();
        for (const auto& [key, w] : model.two_forms) {
            ordered_json entries = ordered_json::object();
            for (const auto& [idx, c] : w.components()) entries[index_key(idx)] = to_string(c, chart);
            forms[key] = std::move(entries);
        }
        doc["two_forms"] = std::move(forms);
    }
    return doc.dump(2) + "\n";
}

void save_model(const ModelDescriptor& model, const std::string& path) {
    const std::string body = model_to_json(model);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw DomainError("cannot write model file '" + path + "'");
        out << body;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw DomainError("cannot move model file into place at '" + path + "'");
}

}  // namespace pqn
