// Command-line front end: validate, page tables, degeneration, dd-lemma,
// obstruction tables, witness extraction/checking, instance generation and
// randomized verification campaigns over files.
//
// Exit codes: 0 ok / verdict emitted, 2 malformed input, 3 complex violates
// the double complex axioms, 4 verification failure or internal assertion.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specseq/harness.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parse = 2;
constexpr int exit_invalid = 3;
constexpr int exit_verify = 4;

struct Io {
    std::string input;
    std::string output;
    std::string format = "text";
};

void add_format_flag(CLI::App* cmd, Io& io) {
    cmd->add_option("--format", io.format, "output mode")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
}

void add_input_flag(CLI::App* cmd, Io& io) {
    cmd->add_option("--input", io.input, "complex file")->required();
}

void add_output_flag(CLI::App* cmd, Io& io, const char* what) {
    cmd->add_option("--output", io.output, what);
}

void emit(const Io& io, const std::string& text, const specseq::ordered_json& structured) {
    std::string payload;
    if (io.format == "structured")
        payload = structured.dump(2) + "\n";
    else
        payload = text.empty() || text.back() == '\n' ? text : text + "\n";
    if (io.output.empty())
        std::cout << payload;
    else
        specseq::write_file_atomic(io.output, payload);
}

template <typename F>
std::string scalar_text(const F& field, const typename F::Scalar& v) {
    auto j = specseq::scalar_to_json(field, v);
    return j.is_string() ? j.template get<std::string>() : j.dump();
}

template <typename F>
std::string vec_text(const F& field, const typename specseq::Matrix<F>::Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += scalar_text(field, v[i]);
    }
    return s + ")";
}

specseq::ordered_json header(const char* kind) {
    specseq::ordered_json j;
    j["schema"] = "specseq/1";
    j["kind"] = kind;
    return j;
}

specseq::ordered_json validation_json(const specseq::ValidationReport& rep) {
    auto j = header("validation-report");
    j["valid"] = rep.valid();
    auto issues = specseq::ordered_json::array();
    for (const auto& is : rep.issues) {
        specseq::ordered_json row;
        row["issue"] = specseq::to_string(is.kind);
        row["p"] = is.p;
        row["q"] = is.q;
        row["detail"] = is.detail;
        auto pos = specseq::ordered_json::array();
        for (auto [i, jj] : is.positions)
            pos.push_back(specseq::ordered_json::array({i, jj}));
        row["positions"] = std::move(pos);
        issues.push_back(std::move(row));
    }
    j["issues"] = std::move(issues);
    return j;
}

std::string validation_text(const specseq::ValidationReport& rep) {
    if (rep.valid())
        return "valid\n";
    std::ostringstream out;
    out << "invalid: " << rep.issues.size() << " issue"
        << (rep.issues.size() == 1 ? "" : "s") << "\n";
    for (const auto& is : rep.issues) {
        out << specseq::to_string(is.kind) << " at (" << is.p << "," << is.q
            << "): " << is.detail;
        if (!is.positions.empty()) {
            out << " [entries";
            for (auto [i, j] : is.positions)
                out << " (" << i << "," << j << ")";
            out << "]";
        }
        out << "\n";
    }
    return out.str();
}

/// Rejects invalid complexes for every command downstream of parsing:
/// prints the report and returns the exit code to propagate.
template <typename F>
std::optional<int> gate_valid(const specseq::DoubleComplex<F>& c, const Io& io) {
    auto rep = specseq::validate(c);
    if (rep.valid())
        return std::nullopt;
    emit(io, validation_text(rep), validation_json(rep));
    return exit_invalid;
}

template <typename Fn>
int with_complex_file(const Io& io, Fn&& fn) {
    const auto text = specseq::read_file(io.input);
    const auto doc = specseq::parse_json_text(text);
    if (!doc.is_object() || !doc.contains("field"))
        throw specseq::parse_error("document", "expected an object with a field key");
    const auto spec = specseq::field_spec_from_json(doc.at("field"));
    return specseq::with_field(spec, [&](auto field) -> int {
        auto c = specseq::complex_from_json(field, doc);
        return fn(std::move(field), std::move(c));
    });
}

specseq::FieldSpec field_spec_from_flag(const std::string& s) {
    if (s == "Q")
        return specseq::FieldSpec::rationals();
    if (s.size() >= 2 && s[0] == 'F' &&
        s.find_first_not_of("0123456789", 1) == std::string::npos)
        return specseq::FieldSpec::prime(std::stoull(s.substr(1)));
    throw CLI::ValidationError("--field", "expected Q or F<prime>, got " + s);
}

specseq::Recipe recipe_from_flag(const std::string& s) {
    if (s == "mixed")
        return specseq::Recipe::mixed();
    if (s == "squares-dots")
        return specseq::Recipe::squares_dots();
    if (s == "zigzags")
        return specseq::Recipe::zigzags();
    throw CLI::ValidationError("--recipe", "unknown recipe " + s);
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int cmd_validate(const Io& io) {
    return with_complex_file(io, [&](auto field, auto c) {
        static_cast<void>(field);
        auto rep = specseq::validate(c);
        if (!rep.valid()) {
            emit(io, validation_text(rep), validation_json(rep));
            return exit_invalid;
        }
        std::size_t total = 0;
        for (const auto& [k, d] : c.support())
            total += d;
        auto j = validation_json(rep);
        j["cells"] = c.support().size();
        j["total_dim"] = total;
        std::ostringstream out;
        out << "valid\ncells: " << c.support().size() << "\ntotal dim: " << total << "\n";
        emit(io, out.str(), j);
        return exit_ok;
    });
}

int cmd_pages(const Io& io, int max_r, bool with_matrices) {
    return with_complex_file(io, [&](auto field, auto c) {
        if (auto bad = gate_valid(c, io))
            return *bad;
        auto ft = specseq::totalize(c);
        specseq::ZBTable t(ft);
        const int last = max_r >= 0 ? max_r : specseq::page_cutoff(ft) + 1;

        std::ostringstream out;
        auto j = header("pages");
        j["field"] = specseq::field_spec_to_json(specseq::field_spec_of(field));
        auto pages_json = specseq::ordered_json::array();
        for (int r = 0; r <= last; ++r) {
            auto pg = specseq::page(t, r);
            out << "page " << r << "\n";
            specseq::ordered_json pj;
            pj["r"] = r;
            auto cells = specseq::ordered_json::array();
            for (const auto& [k, cell] : pg.cells) {
                if (cell.dim == 0 && cell.d.is_zero())
                    continue;
                out << "  (" << k.first << "," << k.second << ") dim " << cell.dim;
                specseq::ordered_json cj;
                cj["p"] = k.first;
                cj["q"] = k.second;
                cj["dim"] = cell.dim;
                if (with_matrices && !cell.d.is_zero()) {
                    auto dj = specseq::matrix_to_json(field, cell.d);
                    out << "  d -> (" << k.first + r << "," << k.second - r + 1
                        << "): " << dj.dump();
                    cj["d"] = std::move(dj);
                }
                out << "\n";
                cells.push_back(std::move(cj));
            }
            pj["cells"] = std::move(cells);
            pages_json.push_back(std::move(pj));
        }
        j["pages"] = std::move(pages_json);

        out << "page infinity\n";
        auto inf = specseq::infinity_page(t);
        auto ij = specseq::ordered_json::array();
        for (const auto& [k, d] : inf.dims) {
            if (d == 0)
                continue;
            out << "  (" << k.first << "," << k.second << ") dim " << d << "\n";
            specseq::ordered_json cj;
            cj["p"] = k.first;
            cj["q"] = k.second;
            cj["dim"] = d;
            ij.push_back(std::move(cj));
        }
        j["infinity"] = std::move(ij);
        emit(io, out.str(), j);
        return exit_ok;
    });
}

int cmd_degeneration(const Io& io) {
    return with_complex_file(io, [&](auto field, auto c) {
        static_cast<void>(field);
        if (auto bad = gate_valid(c, io))
            return *bad;
        auto ft = specseq::totalize(c);
        specseq::ZBTable t(ft);
        const int r = specseq::degeneration_page(t);
        auto j = header("degeneration");
        j["r_deg"] = r;
        emit(io, std::to_string(r) + "\n", j);
        return exit_ok;
    });
}

int cmd_ddlemma(const Io& io) {
    return with_complex_file(io, [&](auto field, auto c) {
        static_cast<void>(field);
        if (auto bad = gate_valid(c, io))
            return *bad;
        auto rep = specseq::dd_lemma(c);
        std::ostringstream out;
        out << "ddlemma: " << (rep.global ? "holds" : "fails") << "\n";
        auto j = header("ddlemma-report");
        j["holds"] = rep.global;
        auto cells = specseq::ordered_json::array();
        for (const auto& [k, cell] : rep.cells) {
            out << "(" << k.first << "," << k.second << "): "
                << (cell.pass ? "pass" : "FAIL") << "  dim(im d1 ∩ ker d2)="
                << cell.im_d1_ker_d2.dim() << " dim(ker d1 ∩ im d2)="
                << cell.ker_d1_im_d2.dim() << " dim(im d1d2)=" << cell.im_d1d2.dim()
                << "\n";
            specseq::ordered_json cj;
            cj["p"] = k.first;
            cj["q"] = k.second;
            cj["pass"] = cell.pass;
            cj["dim_im_d1_ker_d2"] = cell.im_d1_ker_d2.dim();
            cj["dim_ker_d1_im_d2"] = cell.ker_d1_im_d2.dim();
            cj["dim_im_d1d2"] = cell.im_d1d2.dim();
            cells.push_back(std::move(cj));
        }
        j["cells"] = std::move(cells);
        emit(io, out.str(), j);
        return exit_ok;
    });
}

int cmd_obstructions(const Io& io) {
    return with_complex_file(io, [&](auto field, auto c) {
        static_cast<void>(field);
        if (auto bad = gate_valid(c, io))
            return *bad;
        auto ft = specseq::totalize(c);
        specseq::ZBTable t(ft);
        auto table = specseq::obstruction_table(t);
        int r_obs = 0;
        std::ostringstream out;
        auto j = header("obstruction-table");
        auto entries = specseq::ordered_json::array();
        for (const auto& [key, nonempty] : table) {
            auto [p, q, r] = key;
            if (nonempty)
                r_obs = std::max(r_obs, r + 1);
            out << "(" << p << "," << q << ") r=" << r << ": "
                << (nonempty ? "nonempty" : "empty") << "\n";
            specseq::ordered_json row;
            row["p"] = p;
            row["q"] = q;
            row["r"] = r;
            row["nonempty"] = nonempty;
            entries.push_back(std::move(row));
        }
        out << "degeneration by obstructions: " << r_obs << "\n";
        j["entries"] = std::move(entries);
        j["r_deg"] = r_obs;
        emit(io, out.str(), j);
        return exit_ok;
    });
}

int cmd_witness(const Io& io, int p, int q, int r, const std::string& check_path) {
    return with_complex_file(io, [&](auto field, auto c) {
        if (auto bad = gate_valid(c, io))
            return *bad;
        auto ft = specseq::totalize(c);

        if (!check_path.empty()) {
            const auto wdoc = specseq::parse_json_text(specseq::read_file(check_path));
            auto w = specseq::witness_from_json(field, wdoc);
            const bool ok = specseq::check_witness(ft, w);
            auto j = header("witness-check");
            j["p"] = w.p;
            j["q"] = w.q;
            j["r"] = w.r;
            j["verified"] = ok;
            emit(io, std::string(ok ? "witness verified" : "witness rejected") + "\n", j);
            return ok ? exit_ok : exit_verify;
        }

        specseq::ZBTable t(ft);
        std::optional<specseq::Witness<std::decay_t<decltype(field)>>> w;
        if (r <= specseq::page_cutoff(ft))
            w = specseq::obstruction_nonempty(t, p, q, r);
        if (!w) {
            auto j = header("witness");
            j["p"] = p;
            j["q"] = q;
            j["r"] = r;
            j["empty"] = true;
            emit(io, "empty\n", j);
            return exit_ok;
        }

        auto j = specseq::witness_to_json(field, *w);
        std::ostringstream out;
        out << "witness at (" << w->p << "," << w->q << ") r=" << w->r << "\n";
        if (w->r == 0)
            out << "boundary = " << vec_text(field, w->boundary_element) << "\n";
        else
            for (std::size_t i = 0; i < w->components.size(); ++i)
                out << "xi_" << i << " = " << vec_text(field, w->components[i]) << "\n";
        emit(io, out.str(), j);
        return exit_ok;
    });
}

int cmd_generate(const std::string& field_flag, const std::string& recipe_flag,
                 const std::string& shape, std::optional<std::uint64_t> seed,
                 const std::string& out_path) {
    const auto spec = field_spec_from_flag(field_flag);
    return specseq::with_field(spec, [&](auto field) -> int {
        using F = std::decay_t<decltype(field)>;
        specseq::DoubleComplex<F> c(field);
        if (!shape.empty()) {
            if (shape == "dot")
                c = specseq::make_dot(field, 0, 0);
            else if (shape == "square")
                c = specseq::make_square(field, 0, 0);
            else if (shape == "hz")
                c = specseq::make_zigzag(field, specseq::ZigzagShape::HZ, 0, 0);
            else if (shape == "vz")
                c = specseq::make_zigzag(field, specseq::ZigzagShape::VZ, 0, 0);
            else
                c = specseq::make_zigzag(field, specseq::ZigzagShape::L3, 0, 0);
        } else {
            const std::uint64_t s = seed ? *seed : fresh_seed();
            c = specseq::random_complex(field, recipe_from_flag(recipe_flag), s);
            (out_path.empty() ? std::cerr : std::cout) << "seed: " << s << "\n";
        }
        specseq::internal_check(specseq::validate(c).valid(),
                                "generate: produced an invalid complex");
        const auto text = specseq::serialize_complex(c);
        if (out_path.empty())
            std::cout << text;
        else
            specseq::write_file_atomic(out_path, text);
        return exit_ok;
    });
}

int cmd_verify(const Io& io, const std::string& theorem, std::size_t trials,
               std::optional<std::uint64_t> seed, const std::string& recipe_flag,
               const std::string& field_flag) {
    auto prop = specseq::property_from_name(theorem);
    if (!prop)
        throw CLI::ValidationError("--theorem", "unknown property " + theorem);
    specseq::Campaign camp;
    camp.seed = seed ? *seed : fresh_seed();
    camp.trials = trials;
    camp.recipe = recipe_from_flag(recipe_flag);
    camp.properties = {*prop};
    const auto spec = field_spec_from_flag(field_flag);
    return specseq::with_field(spec, [&](auto field) -> int {
        auto rep = specseq::run_campaign(field, camp);
        auto j = header("campaign-report");
        j["seed"] = rep.seed;
        j["trials"] = rep.trials;
        j["recipe"] = rep.recipe_name;
        j["field"] = specseq::field_spec_to_json(specseq::field_spec_of(field));
        auto tallies = specseq::ordered_json::array();
        for (const auto& [pr, tally] : rep.tallies) {
            specseq::ordered_json row;
            row["property"] = specseq::property_name(pr);
            row["pass"] = tally.pass;
            row["fail"] = tally.fail;
            row["vacuous"] = tally.vacuous;
            tallies.push_back(std::move(row));
        }
        j["tallies"] = std::move(tallies);
        if (rep.first_failure) {
            const auto& f = *rep.first_failure;
            specseq::ordered_json fj;
            fj["property"] = specseq::property_name(f.property);
            fj["trial"] = f.trial;
            fj["complex_seed"] = f.complex_seed;
            fj["detail"] = f.detail;
            fj["minimized"] = specseq::parse_json_text(f.minimized);
            j["first_failure"] = std::move(fj);
        } else {
            j["first_failure"] = nullptr;
        }
        emit(io, rep.render(), j);
        return rep.total_failures() == 0 ? exit_ok : exit_verify;
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectral sequence engine for bounded double complexes"};
    app.require_subcommand(1);

    Io io;
    int max_r = -1;
    bool with_matrices = false;
    int wp = 0, wq = 0, wr = 1;
    std::string check_path;
    std::string field_flag = "Q";
    std::string recipe_flag = "mixed";
    std::string shape;
    std::uint64_t seed_val = 0;
    std::size_t trials = 100;
    std::string theorem;

    auto* validate = app.add_subcommand("validate", "check the double complex axioms");
    add_input_flag(validate, io);
    add_output_flag(validate, io, "write the report here instead of stdout");
    add_format_flag(validate, io);

    auto* pages = app.add_subcommand("pages", "page tables E_0..E_r and E_infinity");
    add_input_flag(pages, io);
    add_output_flag(pages, io, "write the tables here instead of stdout");
    add_format_flag(pages, io);
    pages->add_option("--max-r", max_r, "last page to print (default: cutoff+1)");
    pages->add_flag("--with-matrices", with_matrices, "include the d_r matrices");

    auto* degen = app.add_subcommand("degeneration", "smallest r with d_s = 0 for all s >= r");
    add_input_flag(degen, io);
    add_output_flag(degen, io, "write the result here instead of stdout");
    add_format_flag(degen, io);

    auto* ddlemma = app.add_subcommand("ddlemma", "decide the d'd''-lemma cell by cell");
    add_input_flag(ddlemma, io);
    add_output_flag(ddlemma, io, "write the report here instead of stdout");
    add_format_flag(ddlemma, io);

    auto* obstructions =
        app.add_subcommand("obstructions", "nonemptiness table of the obstruction sets");
    add_input_flag(obstructions, io);
    add_output_flag(obstructions, io, "write the table here instead of stdout");
    add_format_flag(obstructions, io);

    auto* witness =
        app.add_subcommand("witness", "extract or re-check an obstruction witness");
    add_input_flag(witness, io);
    add_output_flag(witness, io, "write the witness here instead of stdout");
    add_format_flag(witness, io);
    witness->add_option("--p", wp, "filtration degree");
    witness->add_option("--q", wq, "complementary degree");
    witness->add_option("--r", wr, "page index")->check(CLI::NonNegativeNumber);
    witness->add_option("--check", check_path,
                        "verify a previously extracted witness file instead");

    auto* generate = app.add_subcommand("generate", "write a random or named test complex");
    auto* gen_out = generate->add_option("--output", io.output, "destination file");
    generate->add_option("--field", field_flag, "Q or F<prime>")->capture_default_str();
    generate->add_option("--recipe", recipe_flag, "mixed | squares-dots | zigzags")
        ->capture_default_str();
    auto* gen_shape = generate->add_option(
        "--shape", shape, "named complex instead of a random one");
    gen_shape->check(CLI::IsMember({"dot", "square", "hz", "vz", "l3"}));
    auto* gen_seed = generate->add_option("--seed", seed_val, "generator seed");

    auto* verify = app.add_subcommand("verify", "randomized verification campaign");
    verify->add_option("--theorem", theorem,
                       "main | eqdeg | prop-alpha-beta | lemma-alpha | lemma-beta | "
                       "page-oracle | convergence")
        ->required();
    verify->add_option("--trials", trials, "number of random complexes")
        ->capture_default_str();
    auto* ver_seed = verify->add_option("--seed", seed_val, "campaign seed");
    verify->add_option("--recipe", recipe_flag, "mixed | squares-dots | zigzags")
        ->capture_default_str();
    verify->add_option("--field", field_flag, "Q or F<prime>")->capture_default_str();
    add_output_flag(verify, io, "write the report here instead of stdout");
    add_format_flag(verify, io);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return cmd_validate(io);
        if (pages->parsed())
            return cmd_pages(io, max_r, with_matrices);
        if (degen->parsed())
            return cmd_degeneration(io);
        if (ddlemma->parsed())
            return cmd_ddlemma(io);
        if (obstructions->parsed())
            return cmd_obstructions(io);
        if (witness->parsed())
            return cmd_witness(io, wp, wq, wr, check_path);
        if (generate->parsed())
            return cmd_generate(field_flag, recipe_flag, shape,
                                gen_seed->count() ? std::optional(seed_val) : std::nullopt,
                                gen_out->count() ? io.output : std::string());
        if (verify->parsed())
            return cmd_verify(io, theorem, trials,
                              ver_seed->count() ? std::optional(seed_val) : std::nullopt,
                              recipe_flag, field_flag);
    } catch (const specseq::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return e.get_exit_code();
    } catch (const specseq::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_verify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verify;
    }
    return exit_ok;
}
