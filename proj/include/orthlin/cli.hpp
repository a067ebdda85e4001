#ifndef ORTHLIN_CLI_HPP
#define ORTHLIN_CLI_HPP

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "random.hpp"

// orthlin command-line front end. JSON reports go to `out`, diagnostics to
// `err`. Exit codes: 0 success, 2 malformed input, 3 dimension mismatch,
// 4 singular P or pencil where regularity is required, 1 internal failure.

namespace orthlin::cli {

using io::json;

enum Exit : int { ok = 0, internal = 1, malformed = 2, mismatch = 3, singular = 4 };

inline int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_input: return malformed;
        case ErrorKind::dimension_mismatch: return mismatch;
        case ErrorKind::singular: return singular;
        case ErrorKind::internal: return internal;
    }
    return internal;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

inline double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw Error(ErrorKind::invalid_input, "not a number: '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    require(pos == s.size(), ErrorKind::invalid_input, "not a number: '" + s + "'");
    return x;
}

/// "0,1,0" -> vector.
inline Vector parse_vector(const std::string& s) {
    const auto parts = split(s, ',');
    require(!parts.empty(), ErrorKind::invalid_input, "empty vector");
    Vector v(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_double(parts[i]);
    return v;
}

struct RandomSpec {
    long n = 0, k = 0;
    std::uint64_t seed = 0;
};

inline RandomSpec parse_random(const std::string& s) {
    const auto parts = split(s, ',');
    require(parts.size() == 3, ErrorKind::invalid_input, "--random expects n,k,seed");
    RandomSpec r;
    try {
        std::size_t p0 = 0, p1 = 0, p2 = 0;
        r.n = std::stol(parts[0], &p0);
        r.k = std::stol(parts[1], &p1);
        r.seed = std::stoull(parts[2], &p2);
        require(p0 == parts[0].size() && p1 == parts[1].size() && p2 == parts[2].size(), ErrorKind::invalid_input,
                "--random expects integers n,k,seed");
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::invalid_input, "--random expects integers n,k,seed");
    }
    return r;
}

/// Options shared by every subcommand that needs a problem.
struct ProblemSource {
    std::string path;
    std::string random;
    std::string basis = "chebyshev1";

    void attach(CLI::App* app) {
        app->add_option("-p,--problem", path, "problem JSON file");
        app->add_option("--random", random, "random instance n,k,seed instead of a file");
        app->add_option("--basis", basis, "basis kind for --random");
    }

    MatrixPolynomial load() const {
        require(path.empty() != random.empty(), ErrorKind::invalid_input,
                "give exactly one of --problem or --random");
        if (!path.empty()) return io::problem_from_json(io::read_json_file(path));
        const auto r = parse_random(random);
        return random_problem(r.n, r.k, r.seed, basis);
    }
};

inline Side side_or(const std::string& flag, Side fallback) { return flag.empty() ? fallback : side_from_string(flag); }

inline void check_factor_fits(const AnsatzFactor& f, const MatrixPolynomial& p) {
    require(f.k() == p.degree(), ErrorKind::dimension_mismatch, "factor length does not match the degree of P");
    check_factor_shape(f, p.size());
}

inline Pencil pencil_for(const MatrixPolynomial& p, const AnsatzFactor& f) {
    check_factor_fits(f, p);
    return f.side == Side::M1 ? make_m1(p, f) : make_m2(p, f);
}

inline json recovery_json(const MatrixPolynomial& p, const std::vector<Eigentriple>& eig, const Vector& v, Side side) {
    json arr = json::array();
    for (const auto& t : eig) {
        json e;
        e["eigenvalue"] = t.infinite ? json("inf") : io::to_json(t.value);
        // M1: right vectors carry the Kronecker structure, left vectors are
        // recovered through v. M2 is the mirror image.
        const CVector& kron_vec = side == Side::M1 ? t.right : t.left;
        const CVector& proj_vec = side == Side::M1 ? t.left : t.right;
        const RightRecovery rr = recover_right(p, t, kron_vec);
        const CVector w = recover_left(v, proj_vec);
        const double wn = w.norm();
        const CVector wu = wn > 0 ? CVector(w / wn) : w;
        // (Phi^T (x) I) L = v^T (x) P for M2: left vectors are Kronecker-structured
        const CVector& right = side == Side::M1 ? rr.u : wu;
        const CVector& left = side == Side::M1 ? wu : rr.u;
        const CMatrix pa = t.infinite ? CMatrix(leading_monomial_coefficient(p).cast<Complex>()) : evaluate(p, t.value);
        const double pn = matrix_2norm(pa), bs = backward_scale(p, t);
        const double rres = (pa * right).norm(), lres = (left.transpose() * pa).norm();
        const double inf = std::numeric_limits<double>::infinity();
        e["right"] = io::to_json(right);
        e["left"] = io::to_json(left);
        e["right_residual"] = right.norm() > 0 ? rres / (pn > 0 ? pn : 1.0) : inf;
        e["left_residual"] = left.norm() > 0 ? lres / (pn > 0 ? pn : 1.0) : inf;
        e["right_backward_error"] = right.norm() > 0 ? rres / (bs > 0 ? bs : 1.0) : inf;
        e["left_backward_error"] = left.norm() > 0 ? lres / (bs > 0 ? bs : 1.0) : inf;
        e["kronecker_mismatch"] = rr.kronecker_mismatch;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linearizations of matrix polynomials in orthogonal and degree-graded bases", "orthlin"};
    app.require_subcommand(1, 1);
    std::function<json()> action;

    // anchor
    ProblemSource anchor_src;
    bool force_dg = false;
    auto* c_anchor = app.add_subcommand("anchor", "anchor pencil F (three-term) or G (degree-graded)");
    anchor_src.attach(c_anchor);
    c_anchor->add_flag("--degree-graded", force_dg, "require a degree-graded basis and build G");
    c_anchor->callback([&] {
        action = [&] {
            const auto p = anchor_src.load();
            if (force_dg) return io::to_json(build_anchor_dg(p));
            return io::to_json(anchor(p));
        };
    });

    // ansatz
    ProblemSource ansatz_src;
    std::string ansatz_factor, ansatz_side;
    auto* c_ansatz = app.add_subcommand("ansatz", "pencil from an ansatz factor (v, B)");
    ansatz_src.attach(c_ansatz);
    c_ansatz->add_option("-f,--factor", ansatz_factor, "factor JSON file")->required();
    c_ansatz->add_option("--side", ansatz_side, "m1 or m2 (default: the factor's side)");
    c_ansatz->callback([&] {
        action = [&] {
            const auto p = ansatz_src.load();
            auto f = io::factor_from_json(io::read_json_file(ansatz_factor));
            f.side = side_or(ansatz_side, f.side);
            return io::to_json(pencil_for(p, f));
        };
    });

    // blocksym
    ProblemSource bs_src;
    std::string bs_v;
    auto* c_bs = app.add_subcommand("blocksym", "block-symmetric pencil in DM(P) for ansatz vector v");
    bs_src.attach(c_bs);
    c_bs->add_option("--v", bs_v, "ansatz vector, comma separated")->required();
    c_bs->callback([&] {
        action = [&] {
            const auto p = bs_src.load();
            const auto f = dm_factor(p, parse_vector(bs_v));
            return json{{"factor", io::to_json(f)}, {"pencil", io::to_json(dm_pencil(p, f))}};
        };
    });

    // check
    ProblemSource check_src;
    std::string check_factor;
    auto* c_check = app.add_subcommand("check", "rank test for [v (x) I  B]");
    check_src.attach(c_check);
    c_check->add_option("-f,--factor", check_factor, "factor JSON file")->required();
    c_check->callback([&] {
        action = [&] {
            const auto p = check_src.load();
            const auto f = io::factor_from_json(io::read_json_file(check_factor));
            check_factor_fits(f, p);
            const auto c = check_linearization(f);
            return json{{"rank", c.rank},
                        {"deficiency", c.deficiency},
                        {"is_strong_linearization", c.is_strong_linearization},
                        {"sigma_min", c.sigma_min},
                        {"sigma_max", c.sigma_max}};
        };
    });

    // membership
    ProblemSource mem_src;
    std::string mem_pencil, mem_side = "m1";
    double mem_tol = 1e-8;
    auto* c_mem = app.add_subcommand("membership", "test whether a pencil lies in M1(P) or M2(P)");
    mem_src.attach(c_mem);
    c_mem->add_option("--pencil", mem_pencil, "pencil JSON file")->required();
    c_mem->add_option("--side", mem_side, "m1 or m2");
    c_mem->add_option("--tol", mem_tol, "relative residual tolerance");
    c_mem->callback([&] {
        action = [&] {
            const auto p = mem_src.load();
            const auto l = io::pencil_from_json(io::read_json_file(mem_pencil));
            const auto m = verify_membership(l, p, side_from_string(mem_side), mem_tol);
            return json{{"member", m.member}, {"v", io::to_json(m.v)}, {"residual", m.residual}};
        };
    });

    // eig and recover
    ProblemSource eig_src;
    std::string eig_factor;
    bool eig_recover = false;
    auto* c_eig = app.add_subcommand("eig", "spectrum of the anchor or of a given factor's pencil");
    eig_src.attach(c_eig);
    c_eig->add_option("--factor", eig_factor, "factor JSON file");
    c_eig->add_flag("--recover", eig_recover, "include eigenvectors of P recovered from the pencil");

    ProblemSource rec_src;
    std::string rec_factor;
    auto* c_rec = app.add_subcommand("recover", "eigenvectors of P recovered from pencil eigenvectors");
    rec_src.attach(c_rec);
    c_rec->add_option("--factor", rec_factor, "factor JSON file");

    auto spectral_action = [&](const ProblemSource& src, const std::string& factor_path, bool with_vectors,
                               bool vectors_only) {
        const auto p = src.load();
        AnsatzFactor f;
        if (factor_path.empty()) {
            require_ansatz_degree(p);
            f.v = Vector::Unit(p.degree(), 0);
            f.B = Matrix::Zero(p.degree() * p.size(), (p.degree() - 1) * p.size());
            f.B.bottomRows((p.degree() - 1) * p.size()).setIdentity();
        } else {
            f = io::factor_from_json(io::read_json_file(factor_path));
        }
        const Pencil l = pencil_for(p, f);
        const auto eig = pencil_eigen(l);
        json rep = vectors_only ? json::object() : io::spectrum_report(eig);
        if (with_vectors) rep["eigenvectors"] = recovery_json(p, eig, f.v, f.side);
        return rep;
    };
    c_eig->callback([&] { action = [&] { return spectral_action(eig_src, eig_factor, eig_recover, false); }; });
    c_rec->callback([&] { action = [&] { return spectral_action(rec_src, rec_factor, true, true); }; });

    // exclusion
    ProblemSource ex_src;
    std::string ex_v, ex_factor;
    double ex_tol = 1e-8;
    auto* c_ex = app.add_subcommand("exclusion", "eigenvalue exclusion for ansatz vector v");
    ex_src.attach(c_ex);
    c_ex->add_option("--v", ex_v, "ansatz vector, comma separated");
    c_ex->add_option("--factor", ex_factor, "factor JSON file; adds the eigenvector exclusion check");
    c_ex->add_option("--tol", ex_tol, "distance tolerance");
    c_ex->callback([&] {
        action = [&] {
            const auto p = ex_src.load();
            require(!ex_v.empty() || !ex_factor.empty(), ErrorKind::invalid_input, "give --v or --factor");
            std::optional<AnsatzFactor> f;
            if (!ex_factor.empty()) {
                f = io::factor_from_json(io::read_json_file(ex_factor));
                check_factor_fits(*f, p);
            }
            const Vector v = ex_v.empty() ? f->v : parse_vector(ex_v);
            const auto r = eigenvalue_exclusion(p, v, ex_tol);
            json roots = json::array();
            for (const auto& z : r.roots) roots.push_back(io::to_json(z));
            json rep{{"excluded", r.excluded},
                     {"polynomial", r.poly.c},
                     {"roots", roots},
                     {"min_distance", std::isfinite(r.min_distance) ? json(r.min_distance) : json(nullptr)},
                     {"min_singular", std::isfinite(r.min_singular) ? json(r.min_singular) : json(nullptr)},
                     {"has_infinite", r.has_infinite},
                     {"rank_test", r.rank_test},
                     {"consistent", r.consistent}};
            if (f) {
                const auto ev = exclusion(pencil_for(p, *f), f->v, p, f->side);
                rep["eigenvector_exclusion"] = {{"pass", ev.pass}, {"worst", ev.worst}};
            }
            return rep;
        };
    });

    // oracle
    ProblemSource or_src;
    auto* c_or = app.add_subcommand("oracle", "reference spectrum from det P");
    or_src.attach(c_or);
    c_or->callback([&] {
        action = [&] {
            const auto p = or_src.load();
            const auto d = det_poly_full(p);
            require(!d.singular, ErrorKind::singular, "det P vanishes identically");
            json rep = io::to_json(reference_spectrum(p));
            rep["det_coefficients"] = d.poly.c;
            rep["det_degree"] = d.poly.degree();
            return rep;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return malformed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
    try {
        out << action().dump(2) << "\n";
        return ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return malformed;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"orthlin"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace orthlin::cli

#endif
