// Copyright 2026 The segmap authors
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

#ifndef SEGMAP_JSONIO_HPP
#define SEGMAP_JSONIO_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "segmap/geometry.hpp"
#include "segmap/maps.hpp"
#include "segmap/reconstruct.hpp"
#include "segmap/states.hpp"

namespace segmap {

/// Ordered JSON document builder. Keys keep insertion order and every float
/// is printed with 17 significant digits, so a report is a deterministic
/// function of its contents: identical runs produce byte-identical files.
class JsonValue {
  public:
    static JsonValue object();
    static JsonValue array();
    static JsonValue number(double v);
    static JsonValue integer(std::int64_t v);
    static JsonValue uinteger(std::uint64_t v);
    static JsonValue boolean(bool v);
    static JsonValue string(std::string v);
    static JsonValue null();

    JsonValue &add(const std::string &key, JsonValue v);  // object members
    JsonValue &push(JsonValue v);                          // array elements

    std::string dump() const;  // pretty, two-space indent, trailing newline

  private:
    enum class Kind { kObject, kArray, kNumber, kInteger, kUInteger, kBool, kString, kNull };
    Kind kind_ = Kind::kNull;
    double num_ = 0.0;
    std::int64_t int_ = 0;
    std::uint64_t uint_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<std::pair<std::string, JsonValue>> members_;
    std::vector<JsonValue> elements_;

    void write(std::string &out, int indent) const;
};

// Builders for the interchange formats. Matrices carry a "kind" tag
// ("matrix" | "hermitian" | "density") next to n / re / im row-major parts.
JsonValue matrix_json(const ComplexMatrix &m, const std::string &kind);
JsonValue density_json(const DensityOperator &rho);
JsonValue measurement_map_json(const MeasurementMap &map);
JsonValue fractional_linear_json(const FractionalLinearMap &map);
JsonValue certificate_json(const SegmentCertificate &cert);

// Parsers. Throw InputError on malformed input.
ComplexMatrix read_matrix(const std::string &text);
HermitianMatrix read_hermitian(const std::string &text);
DensityOperator read_density(const std::string &text);
MeasurementMap read_measurement_map(const std::string &text);
FractionalLinearMap read_fractional_linear(const std::string &text);
std::vector<std::pair<DensityOperator, DensityOperator>> read_sample_pairs(
    const std::string &text);

std::string load_file(const std::string &path);
void save_file(const std::string &path, const std::string &contents);

}  // namespace segmap

#endif
