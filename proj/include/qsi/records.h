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

#ifndef QSI_RECORDS_H
#define QSI_RECORDS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsi/exact.h"

namespace qsi {

using OrderedJson = nlohmann::ordered_json;

/// One self-describing result: the command and its parameters, the named
/// outputs, and the seed needed to replay it.
///
/// Rational outputs are stored as {"rational": "p/q", "float": x}; in CSV they
/// become two columns, `name` and `name_float`.
struct RunRecord {
    std::string command;
    std::string run_id;
    OrderedJson params = OrderedJson::object();
    OrderedJson outputs = OrderedJson::object();
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> wall_time_ms;

    void put_rational(const std::string &name, const Rational &q);
    void put_real(const std::string &name, double x);
    /// Leaves a blank cell, keeping the column set identical across rows.
    void put_blank(const std::string &name);
    template <typename T>
    void put(const std::string &name, const T &value) {
        outputs[name] = value;
    }

    OrderedJson to_json() const;
};

/// Fixed-header CSV. Cells are written bare unless they contain a comma,
/// quote or newline.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    /// Flattens records into rows: params, then outputs, then run_id, seed,
    /// wall_time_ms. Every record must produce the same columns.
    static CsvTable from_records(const std::vector<RunRecord> &records);

    const std::vector<std::string> &header() const { return header_; }
    const std::vector<std::vector<std::string>> &rows() const { return rows_; }
    void add_row(std::vector<std::string> row);
    void write(std::ostream &out) const;
    std::string str() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip decimal form of a double.
std::string format_real(double x);

/// Writes `text` to `path`, throwing IoError on failure.
void write_file(const std::string &path, const std::string &text);

}  // namespace qsi

#endif  // QSI_RECORDS_H
