// Copyright 2026 The QSI Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsi/records.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qsi/errors.h"

namespace qsi {

void RunRecord::put_rational(const std::string &name, const Rational &q) {
    outputs[name] = OrderedJson{{"rational", to_string(q)}, {"float", to_double(q)}};
}

void RunRecord::put_real(const std::string &name, double x) { outputs[name] = x; }

void RunRecord::put_blank(const std::string &name) { outputs[name] = nullptr; }

OrderedJson RunRecord::to_json() const {
    OrderedJson j;
    j["command"] = command;
    j["run_id"] = run_id;
    j["params"] = params;
    j["outputs"] = outputs;
    j["seed"] = seed ? OrderedJson(*seed) : OrderedJson(nullptr);
    j["wall_time_ms"] = wall_time_ms ? OrderedJson(*wall_time_ms) : OrderedJson(nullptr);
    return j;
}

std::string format_real(double x) { return nlohmann::json(x).dump(); }

namespace {

bool is_rational_cell(const OrderedJson &v) {
    return v.is_object() && v.contains("rational") && v.contains("float");
}

std::string cell(const OrderedJson &v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        return format_real(v.get<double>());
    }
    return v.dump();
}

void flatten(const OrderedJson &obj, std::vector<std::string> &names, std::vector<std::string> &cells) {
    for (const auto &[key, value] : obj.items()) {
        if (is_rational_cell(value)) {
            names.push_back(key);
            cells.push_back(value["rational"].get<std::string>());
            names.push_back(key + "_float");
            cells.push_back(format_real(value["float"].get<double>()));
        } else {
            names.push_back(key);
            cells.push_back(cell(value));
        }
    }
}

std::string quote(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

CsvTable CsvTable::from_records(const std::vector<RunRecord> &records) {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    for (const auto &rec : records) {
        std::vector<std::string> names, cells;
        flatten(rec.params, names, cells);
        flatten(rec.outputs, names, cells);
        names.insert(names.end(), {"run_id", "seed", "wall_time_ms"});
        cells.push_back(rec.run_id);
        cells.push_back(rec.seed ? std::to_string(*rec.seed) : "");
        cells.push_back(rec.wall_time_ms ? std::to_string(*rec.wall_time_ms) : "");
        if (header.empty()) {
            header = names;
        } else if (names != header) {
            throw std::logic_error("records with differing columns cannot share a CSV table");
        }
        rows.push_back(std::move(cells));
    }
    CsvTable table(std::move(header));
    for (auto &row : rows) {
        table.add_row(std::move(row));
    }
    return table;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) {
        throw std::logic_error("CSV row width does not match the header");
    }
    rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream &out) const {
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out << ',';
            out << quote(cells[i]);
        }
        out << '\n';
    };
    line(header_);
    for (const auto &row : rows_) {
        line(row);
    }
}

std::string CsvTable::str() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

}  // namespace qsi
