#ifndef ORTHLIN_IO_HPP
#define ORTHLIN_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectral.hpp"

// JSON schemas. Matrices are row-major arrays of rows; problem coefficients
// are listed in ascending order P_0 .. P_k.

namespace orthlin::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
    require(j.is_object(), ErrorKind::invalid_input, "expected a JSON object");
    auto it = j.find(key);
    require(it != j.end(), ErrorKind::invalid_input, std::string("missing field '") + key + "'");
    return *it;
}

inline double number(const json& j) {
    require(j.is_number(), ErrorKind::invalid_input, "expected a number");
    return j.get<double>();
}

inline long integer(const json& j, const char* what) {
    require(j.is_number_integer(), ErrorKind::invalid_input, std::string(what) + " must be an integer");
    return j.get<long>();
}

inline std::vector<double> numbers(const json& j) {
    require(j.is_array(), ErrorKind::invalid_input, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j) out.push_back(number(x));
    return out;
}

}  // namespace detail

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

/// [[re, im], ...]
inline json to_json(const CVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
    return a;
}

inline json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

/// Rectangular matrix; an empty array gives a 0 x 0 matrix.
inline Matrix matrix_from_json(const json& j) {
    require(j.is_array(), ErrorKind::invalid_input, "matrix must be an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Matrix(0, 0);
    require(j[0].is_array(), ErrorKind::invalid_input, "matrix rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        require(row.is_array(), ErrorKind::invalid_input, "matrix rows must be arrays");
        require(static_cast<Eigen::Index>(row.size()) == cols, ErrorKind::dimension_mismatch, "ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = detail::number(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

inline Vector vector_from_json(const json& j) {
    const auto xs = detail::numbers(j);
    return Eigen::Map<const Vector>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

// ---- basis ----

inline json to_json(const Basis& basis) {
    if (const auto* t = std::get_if<ThreeTermBasis>(&basis)) {
        json j{{"kind", std::string(to_string(t->kind()))}};
        if (t->kind() == BasisKind::newton) j["nodes"] = t->nodes();
        if (t->kind() == BasisKind::custom) {
            j["alpha"] = t->custom_alpha();
            j["beta"] = t->custom_beta();
            j["gamma"] = t->custom_gamma();
        }
        return j;
    }
    const auto& d = std::get<DegreeGradedBasis>(basis);
    return {{"kind", "degree_graded"}, {"shift", d.shifts()}, {"lower", d.lower_table()}};
}

inline Basis basis_from_json(const json& j) {
    const auto& kind_j = detail::field(j, "kind");
    require(kind_j.is_string(), ErrorKind::invalid_input, "basis kind must be a string");
    const auto kind = kind_j.get<std::string>();
    if (kind == "degree_graded") {
        std::vector<std::vector<double>> lower;
        if (j.contains("lower")) {
            require(j["lower"].is_array(), ErrorKind::invalid_input, "'lower' must be an array of arrays");
            for (const auto& row : j["lower"]) lower.push_back(detail::numbers(row));
        }
        return DegreeGradedBasis(detail::numbers(detail::field(j, "shift")), std::move(lower));
    }
    const BasisKind bk = basis_kind_from_string(kind);
    if (bk == BasisKind::custom)
        return ThreeTermBasis::custom(detail::numbers(detail::field(j, "alpha")), detail::numbers(detail::field(j, "beta")),
                                      detail::numbers(detail::field(j, "gamma")));
    if (bk == BasisKind::newton) return ThreeTermBasis::builtin(bk, detail::numbers(detail::field(j, "nodes")));
    return ThreeTermBasis::builtin(bk);
}

// ---- problem ----

inline json to_json(const MatrixPolynomial& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(to_json(c));
    return {{"basis", to_json(p.basis())}, {"n", p.size()}, {"k", p.degree()}, {"coefficients", coeffs}};
}

inline MatrixPolynomial problem_from_json(const json& j) {
    Basis basis = basis_from_json(detail::field(j, "basis"));
    const long n = detail::integer(detail::field(j, "n"), "n");
    const long k = detail::integer(detail::field(j, "k"), "k");
    require(n >= 1 && k >= 1, ErrorKind::invalid_input, "n and k must be positive");
    const auto& cj = detail::field(j, "coefficients");
    require(cj.is_array(), ErrorKind::invalid_input, "'coefficients' must be an array");
    require(static_cast<long>(cj.size()) == k + 1, ErrorKind::dimension_mismatch,
            "expected k+1 = " + std::to_string(k + 1) + " coefficient matrices, got " + std::to_string(cj.size()));
    std::vector<Matrix> coeffs;
    for (const auto& c : cj) {
        Matrix m = matrix_from_json(c);
        require(m.rows() == n && m.cols() == n, ErrorKind::dimension_mismatch,
                "coefficient matrices must be " + std::to_string(n) + " x " + std::to_string(n));
        coeffs.push_back(std::move(m));
    }
    return MatrixPolynomial(std::move(basis), std::move(coeffs));
}

// ---- pencil ----

inline json to_json(const Pencil& l) {
    return {{"n", l.block_size()}, {"k", l.blocks()}, {"X", to_json(l.X())}, {"Y", to_json(l.Y())}};
}

inline Pencil pencil_from_json(const json& j) {
    const long n = detail::integer(detail::field(j, "n"), "n");
    const long k = detail::integer(detail::field(j, "k"), "k");
    require(n >= 1 && k >= 1, ErrorKind::invalid_input, "n and k must be positive");
    return Pencil(matrix_from_json(detail::field(j, "X")), matrix_from_json(detail::field(j, "Y")), n, k);
}

// ---- factor ----

inline json to_json(const AnsatzFactor& f) {
    return {{"v", to_json(f.v)}, {"B", to_json(f.B)}, {"side", std::string(to_string(f.side))}};
}

inline AnsatzFactor factor_from_json(const json& j) {
    AnsatzFactor f;
    f.v = vector_from_json(detail::field(j, "v"));
    f.B = matrix_from_json(detail::field(j, "B"));
    if (j.contains("side")) {
        require(j["side"].is_string(), ErrorKind::invalid_input, "'side' must be a string");
        f.side = side_from_string(j["side"].get<std::string>());
    }
    factor_block_size(f);
    return f;
}

// ---- spectra ----

inline json to_json(const Spectrum& s) {
    json fin = json::array();
    for (const auto& z : s.finite) fin.push_back(to_json(z));
    return {{"finite", fin}, {"infinite_count", s.infinite_count}};
}

/// SpectrumReport: finite eigenvalues with residuals, infinite count.
inline json spectrum_report(const std::vector<Eigentriple>& eig) {
    json fin = json::array();
    long inf = 0;
    for (const auto& t : eig) {
        if (t.infinite) {
            ++inf;
            continue;
        }
        fin.push_back({{"re", t.value.real()}, {"im", t.value.imag()}, {"residual", t.residual}});
    }
    return {{"finite", fin}, {"infinite_count", inf}};
}

inline Spectrum spectrum_from_json(const json& j) {
    Spectrum s;
    const auto& fin = detail::field(j, "finite");
    require(fin.is_array(), ErrorKind::invalid_input, "'finite' must be an array");
    for (const auto& z : fin) s.finite.emplace_back(detail::number(detail::field(z, "re")), detail::number(detail::field(z, "im")));
    s.infinite_count = detail::integer(detail::field(j, "infinite_count"), "infinite_count");
    return s;
}

// ---- files ----

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::invalid_input, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::invalid_input, "'" + path + "': " + e.what());
    }
}

}  // namespace orthlin::io

#endif
