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

#include "segmap/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "segmap/errors.hpp"

namespace segmap {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void append_escaped(std::string &out, const std::string &s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

}  // namespace

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::kObject;
    return v;
}

JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::kArray;
    return v;
}

JsonValue JsonValue::number(double x) {
    JsonValue v;
    v.kind_ = Kind::kNumber;
    v.num_ = x;
    return v;
}

JsonValue JsonValue::integer(std::int64_t x) {
    JsonValue v;
    v.kind_ = Kind::kInteger;
    v.int_ = x;
    return v;
}

JsonValue JsonValue::uinteger(std::uint64_t x) {
    JsonValue v;
    v.kind_ = Kind::kUInteger;
    v.uint_ = x;
    return v;
}

JsonValue JsonValue::boolean(bool x) {
    JsonValue v;
    v.kind_ = Kind::kBool;
    v.bool_ = x;
    return v;
}

JsonValue JsonValue::string(std::string x) {
    JsonValue v;
    v.kind_ = Kind::kString;
    v.str_ = std::move(x);
    return v;
}

JsonValue JsonValue::null() { return JsonValue(); }

JsonValue &JsonValue::add(const std::string &key, JsonValue v) {
    members_.emplace_back(key, std::move(v));
    return *this;
}

JsonValue &JsonValue::push(JsonValue v) {
    elements_.push_back(std::move(v));
    return *this;
}

void JsonValue::write(std::string &out, int indent) const {
    const std::string pad(2 * static_cast<std::size_t>(indent), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(indent + 1), ' ');
    switch (kind_) {
        case Kind::kObject: {
            if (members_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += pad_in;
                append_escaped(out, members_[i].first);
                out += ": ";
                members_[i].second.write(out, indent + 1);
                out += i + 1 < members_.size() ? ",\n" : "\n";
            }
            out += pad + "}";
            return;
        }
        case Kind::kArray: {
            if (elements_.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                out += pad_in;
                elements_[i].write(out, indent + 1);
                out += i + 1 < elements_.size() ? ",\n" : "\n";
            }
            out += pad + "]";
            return;
        }
        case Kind::kNumber: out += format_double(num_); return;
        case Kind::kInteger: out += std::to_string(int_); return;
        case Kind::kUInteger: out += std::to_string(uint_); return;
        case Kind::kBool: out += bool_ ? "true" : "false"; return;
        case Kind::kString: append_escaped(out, str_); return;
        case Kind::kNull: out += "null"; return;
    }
}

std::string JsonValue::dump() const {
    std::string out;
    write(out, 0);
    out += '\n';
    return out;
}

JsonValue matrix_json(const ComplexMatrix &m, const std::string &kind) {
    JsonValue j = JsonValue::object();
    j.add("kind", JsonValue::string(kind));
    j.add("n", JsonValue::integer(m.dim()));
    JsonValue re = JsonValue::array();
    JsonValue im = JsonValue::array();
    for (int i = 0; i < m.dim(); ++i) {
        JsonValue re_row = JsonValue::array();
        JsonValue im_row = JsonValue::array();
        for (int k = 0; k < m.dim(); ++k) {
            re_row.push(JsonValue::number(m(i, k).real()));
            im_row.push(JsonValue::number(m(i, k).imag()));
        }
        re.push(std::move(re_row));
        im.push(std::move(im_row));
    }
    j.add("re", std::move(re));
    j.add("im", std::move(im));
    return j;
}

JsonValue density_json(const DensityOperator &rho) { return matrix_json(rho.matrix(), "density"); }

JsonValue measurement_map_json(const MeasurementMap &map) {
    JsonValue j = JsonValue::object();
    j.add("kind", JsonValue::string("measurement"));
    j.add("transpose", JsonValue::boolean(map.transposed()));
    j.add("M", matrix_json(map.matrix(), "matrix"));
    return j;
}

JsonValue fractional_linear_json(const FractionalLinearMap &map) {
    JsonValue j = JsonValue::object();
    j.add("kind", JsonValue::string("fractional_linear"));
    const int nn = map.psi().dim();
    JsonValue psi = JsonValue::array();
    for (int r = 0; r < nn; ++r) {
        JsonValue row = JsonValue::array();
        for (int c = 0; c < nn; ++c) {
            row.push(JsonValue::number(map.psi()(r, c).real()));
        }
        psi.push(std::move(row));
    }
    j.add("psi", std::move(psi));
    j.add("B", matrix_json(map.offset().matrix(), "hermitian"));
    JsonValue f = JsonValue::array();
    for (double v : map.functional()) {
        f.push(JsonValue::number(v));
    }
    j.add("f", std::move(f));
    j.add("c", JsonValue::number(map.constant()));
    return j;
}

JsonValue certificate_json(const SegmentCertificate &cert) {
    JsonValue j = JsonValue::object();
    j.add("satisfied", JsonValue::boolean(cert.satisfied));
    j.add("worst_deviation", JsonValue::number(cert.worst_deviation));
    j.add("worst_trace_distance", JsonValue::number(cert.worst_trace_distance));
    if (cert.worst_pair) {
        JsonValue w = JsonValue::object();
        w.add("rho1", density_json(cert.worst_pair->rho1));
        w.add("rho2", density_json(cert.worst_pair->rho2));
        w.add("t", JsonValue::number(cert.worst_pair->t));
        j.add("worst_pair", std::move(w));
    } else {
        j.add("worst_pair", JsonValue::null());
    }
    j.add("tolerance", JsonValue::number(cert.tolerance));
    j.add("seed", JsonValue::uinteger(cert.seed));
    j.add("samples", JsonValue::integer(cert.pairs));
    j.add("grid", JsonValue::integer(cert.grid));
    j.add("bisection_failures", JsonValue::integer(cert.bisection_failures));
    JsonValue s = JsonValue::array();
    for (double v : cert.s_values) {
        s.push(JsonValue::number(v));
    }
    j.add("s_values", std::move(s));
    return j;
}

namespace {

using nl = nlohmann::json;

nl parse_or_throw(const std::string &text) {
    nl j = nl::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw InputError("malformed JSON");
    }
    return j;
}

ComplexMatrix matrix_from(const nl &j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im")) {
        throw InputError("matrix object needs n / re / im fields");
    }
    const int n = j.at("n").get<int>();
    if (n < 1) {
        throw InputError("matrix dimension must be >= 1");
    }
    const nl &re = j.at("re");
    const nl &im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != n ||
        static_cast<int>(im.size()) != n) {
        throw InputError("re / im must be n x n arrays");
    }
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) {
        const nl &re_row = re.at(i);
        const nl &im_row = im.at(i);
        if (static_cast<int>(re_row.size()) != n || static_cast<int>(im_row.size()) != n) {
            throw InputError("re / im must be n x n arrays");
        }
        for (int k = 0; k < n; ++k) {
            m(i, k) = cplx(re_row.at(k).get<double>(), im_row.at(k).get<double>());
        }
    }
    return m;
}

}  // namespace

ComplexMatrix read_matrix(const std::string &text) {
    try {
        return matrix_from(parse_or_throw(text));
    } catch (const nl::exception &e) {
        throw InputError(std::string("matrix input: ") + e.what());
    }
}

HermitianMatrix read_hermitian(const std::string &text) {
    const ComplexMatrix m = read_matrix(text);
    if (!m.is_hermitian(kHermitianTol)) {
        throw InputError("matrix is not Hermitian");
    }
    return HermitianMatrix::symmetrized(m);
}

DensityOperator read_density(const std::string &text) {
    const HermitianMatrix h = read_hermitian(text);
    try {
        return DensityOperator::validated(h);
    } catch (const NotPositive &) {
        // Tolerate roundoff from 17-digit serialization of clipped states.
        return DensityOperator::clipped(h.matrix());
    }
}

MeasurementMap read_measurement_map(const std::string &text) {
    try {
        const nl j = parse_or_throw(text);
        if (j.value("kind", "") != "measurement") {
            throw InputError("expected kind \"measurement\"");
        }
        const bool transpose = j.value("transpose", false);
        return MeasurementMap(matrix_from(j.at("M")), transpose);
    } catch (const nl::exception &e) {
        throw InputError(std::string("map input: ") + e.what());
    }
}

FractionalLinearMap read_fractional_linear(const std::string &text) {
    try {
        const nl j = parse_or_throw(text);
        if (j.value("kind", "") != "fractional_linear") {
            throw InputError("expected kind \"fractional_linear\"");
        }
        const ComplexMatrix b = matrix_from(j.at("B"));
        const int n = b.dim();
        const int nn = n * n;
        const nl &psi_rows = j.at("psi");
        if (static_cast<int>(psi_rows.size()) != nn) {
            throw InputError("psi must be n^2 x n^2");
        }
        ComplexMatrix psi(nn);
        for (int r = 0; r < nn; ++r) {
            const nl &row = psi_rows.at(r);
            if (static_cast<int>(row.size()) != nn) {
                throw InputError("psi must be n^2 x n^2");
            }
            for (int c = 0; c < nn; ++c) {
                psi(r, c) = row.at(c).get<double>();
            }
        }
        std::vector<double> f = j.at("f").get<std::vector<double>>();
        return FractionalLinearMap(n, std::move(psi), HermitianMatrix::symmetrized(b),
                                   std::move(f), j.at("c").get<double>());
    } catch (const nl::exception &e) {
        throw InputError(std::string("fractional linear input: ") + e.what());
    }
}

std::vector<std::pair<DensityOperator, DensityOperator>> read_sample_pairs(
    const std::string &text) {
    try {
        const nl j = parse_or_throw(text);
        if (!j.is_array()) {
            throw InputError("sample pairs must be a JSON array");
        }
        std::vector<std::pair<DensityOperator, DensityOperator>> out;
        out.reserve(j.size());
        for (const nl &entry : j) {
            if (!entry.contains("input") || !entry.contains("output")) {
                throw InputError("each sample needs input and output states");
            }
            out.emplace_back(read_density(entry.at("input").dump()),
                             read_density(entry.at("output").dump()));
        }
        return out;
    } catch (const nl::exception &e) {
        throw InputError(std::string("sample pairs input: ") + e.what());
    }
}

std::string load_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void save_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << contents;
}

}  // namespace segmap
