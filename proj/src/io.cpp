#include "noneq/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "noneq/errors.hpp"
#include "noneq/scalar.hpp"

namespace noneq {

namespace {

using nlohmann::json;

double entry_as_double(const json& cell, int i, int j) {
    if (cell.is_number()) return cell.get<double>();
    if (cell.is_string()) return parse_rational(cell.get<std::string>()).to_double();
    throw ParseError("q[" + std::to_string(i) + "][" + std::to_string(j) +
                     "] is neither a number nor a rational string");
}

Rational entry_as_rational(const json& cell, int i, int j) {
    if (cell.is_number_integer()) return Rational(cell.get<long long>());
    if (cell.is_number_float()) return parse_rational(cell.dump());
    if (cell.is_string()) return parse_rational(cell.get<std::string>());
    throw ParseError("q[" + std::to_string(i) + "][" + std::to_string(j) +
                     "] is neither a number nor a rational string");
}

}  // namespace

ChainDocument parse_chain_json(const std::string& text, bool exact) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("chain document must be a JSON object");
    if (!doc.contains("q")) throw ParseError("chain document is missing field 'q'");
    const json& q = doc["q"];
    if (!q.is_array() || q.empty()) throw ParseError("field 'q' must be a non-empty array of rows");

    const int n = static_cast<int>(q.size());
    if (doc.contains("n")) {
        if (!doc["n"].is_number_integer())
            throw ParseError("field 'n' must be an integer");
        if (doc["n"].get<int>() != n)
            throw ParseError("field 'n' (" + doc["n"].dump() + ") disagrees with the number of rows in 'q' (" +
                             std::to_string(n) + ")");
    }

    ChainDocument out;
    out.n = n;
    out.q = MatD::Zero(n, n);
    if (exact) out.q_exact = MatR::Constant(n, n, Rational(0));
    for (int i = 0; i < n; ++i) {
        const json& row = q[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ParseError("row " + std::to_string(i + 1) + " of 'q' must hold exactly " +
                             std::to_string(n) + " entries");
        for (int j = 0; j < n; ++j) {
            out.q(i, j) = entry_as_double(row[j], i + 1, j + 1);
            if (exact) (*out.q_exact)(i, j) = entry_as_rational(row[j], i + 1, j + 1);
        }
    }
    if (doc.contains("name")) out.name = doc["name"].get<std::string>();
    if (doc.contains("description")) out.description = doc["description"].get<std::string>();
    return out;
}

ChainDocument parse_chain_csv(const std::string& text, bool exact) {
    std::vector<std::vector<std::string>> cells;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            auto b = field.find_first_not_of(" \t\r");
            auto e = field.find_last_not_of(" \t\r");
            row.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
        }
        cells.push_back(std::move(row));
    }
    if (cells.empty()) throw ParseError("CSV input holds no rows");
    const int n = static_cast<int>(cells.size());

    ChainDocument out;
    out.n = n;
    out.q = MatD::Zero(n, n);
    if (exact) out.q_exact = MatR::Constant(n, n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(cells[i].size()) != n)
            throw ParseError("CSV row " + std::to_string(i + 1) + " holds " +
                             std::to_string(cells[i].size()) + " fields, expected " + std::to_string(n));
        for (int j = 0; j < n; ++j) {
            Rational r = parse_rational(cells[i][j]);
            out.q(i, j) = r.to_double();
            if (exact) (*out.q_exact)(i, j) = r;
        }
    }
    return out;
}

ChainDocument load_chain_document(const std::string& path, bool csv, bool exact) {
    std::string text;
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open input file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    return csv ? parse_chain_csv(text, exact) : parse_chain_json(text, exact);
}

std::string write_chain_json(const ChainDocument& doc) {
    json q = json::array();
    for (int i = 0; i < doc.n; ++i) {
        json row = json::array();
        for (int j = 0; j < doc.n; ++j) row.push_back(doc.q(i, j));
        q.push_back(std::move(row));
    }
    json out;
    out["n"] = doc.n;
    out["q"] = std::move(q);
    if (!doc.name.empty()) out["name"] = doc.name;
    if (!doc.description.empty()) out["description"] = doc.description;
    return out.dump(2) + "\n";
}

}  // namespace noneq
