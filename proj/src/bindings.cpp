// Distributed under the MIT License.
// See LICENSE for details.

#include <memory>
#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ldpa/hoa.hpp"
#include "ldpa/pipeline.hpp"

namespace py = pybind11;

namespace {

using namespace ldpa;

// Letters arrive as symbol names (symbol alphabets) or iterables of
// proposition names (subset alphabets).
Letter letter_from_py(const Alphabet& alphabet, const py::handle& obj) {
    if (alphabet.is_symbols()) {
        std::string name = py::cast<std::string>(obj);
        const auto& props = alphabet.props();
        for (std::size_t i = 0; i < props.size(); ++i)
            if (props[i] == name)
                return static_cast<Letter>(i);
        throw py::value_error("unknown symbol '" + name + "'");
    }
    std::uint32_t bits = 0;
    for (const py::handle& item : obj) {
        std::string name = py::cast<std::string>(item);
        const auto& props = alphabet.props();
        bool found = false;
        for (std::size_t i = 0; i < props.size(); ++i) {
            if (props[i] == name) {
                bits |= 1u << i;
                found = true;
                break;
            }
        }
        if (!found)
            throw py::value_error("unknown proposition '" + name + "'");
    }
    return bits;
}

LassoWord lasso_from_py(const Alphabet& alphabet, const py::iterable& prefix,
                        const py::iterable& period) {
    LassoWord w;
    for (const py::handle& l : prefix)
        w.prefix.push_back(letter_from_py(alphabet, l));
    for (const py::handle& l : period)
        w.period.push_back(letter_from_py(alphabet, l));
    if (w.period.empty())
        throw py::value_error("period must be nonempty");
    return w;
}

py::dict stats_dict(const PipelineStats& s) {
    py::dict d;
    d["ldba_states"] = s.ldba_states;
    d["qd_states"] = s.qd_states;
    d["dpa_states"] = s.dpa_states;
    d["colors"] = s.colors;
    d["max_t"] = s.max_t;
    d["base_m"] = s.base_m;
    d["millis"] = s.millis;
    d["raced"] = s.raced;
    d["negation_won"] = s.negation_won;
    return d;
}

struct PyTranslation {
    std::shared_ptr<Dpa> dpa;
    std::shared_ptr<Ldba> ldba;
    PipelineStats stats;
};

py::dict report_dict(const CrossReport& r, const Alphabet& alphabet) {
    py::dict d;
    d["ok"] = r.ok();
    d["words_checked"] = r.words_checked;
    d["acceptors"] = r.acceptors;
    d["skipped"] = r.skipped;
    if (!r.ok()) {
        d["detail"] = r.detail;
        py::list prefix, period;
        for (Letter l : r.counterexample->prefix)
            prefix.append(alphabet.letter_name(l));
        for (Letter l : r.counterexample->period)
            period.append(alphabet.letter_name(l));
        d["counterexample"] = py::make_tuple(prefix, period);
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "LTL and limit-deterministic Buchi automata to deterministic parity automata";

    py::register_exception<ParseError>(m, "FormulaParseError", PyExc_ValueError);
    py::register_exception<NnfError>(m, "NnfError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<HoaError>(m, "HoaParseError", PyExc_ValueError);

    py::class_<Ldba, std::shared_ptr<Ldba>>(m, "Ldba")
        .def_property_readonly("num_states", [](const Ldba& a) { return a.num_states; })
        .def_property_readonly("initial", [](const Ldba& a) { return a.initial; })
        .def_property_readonly("qd_size", [](const Ldba& a) { return a.qd_size(); })
        .def_property_readonly("propositions", [](const Ldba& a) { return a.alphabet.props(); })
        .def_property_readonly("state_names", [](const Ldba& a) { return a.state_names; })
        .def("validate", &validate_ldba)
        .def(
            "accepts",
            [](const Ldba& a, const py::iterable& prefix, const py::iterable& period) {
                return ldba_accepts_lasso(a, lasso_from_py(a.alphabet, prefix, period));
            },
            py::arg("prefix"), py::arg("period"))
        .def("to_hoa", [](const Ldba& a) { return emit_hoa(a); })
        .def("to_dot", [](const Ldba& a) { return to_dot(a); })
        .def("__repr__", [](const Ldba& a) {
            return "<Ldba states=" + std::to_string(a.num_states) +
                   " qd=" + std::to_string(a.qd_size()) + ">";
        });

    py::class_<Dpa, std::shared_ptr<Dpa>>(m, "Dpa")
        .def_property_readonly("num_states", [](const Dpa& d) { return d.num_states; })
        .def_property_readonly("initial", [](const Dpa& d) { return d.initial; })
        .def_property_readonly("colors", &Dpa::used_colors)
        .def_property_readonly("propositions", [](const Dpa& d) { return d.alphabet.props(); })
        .def_property_readonly("state_names", [](const Dpa& d) { return d.state_names; })
        .def(
            "accepts",
            [](const Dpa& d, const py::iterable& prefix, const py::iterable& period) {
                return dpa_accepts_lasso(d, lasso_from_py(d.alphabet, prefix, period));
            },
            py::arg("prefix"), py::arg("period"))
        .def("complement", &complement_dpa)
        .def("compress_colors", &compress_colors)
        .def("to_hoa", [](const Dpa& d) { return emit_hoa(d); })
        .def("to_dot", [](const Dpa& d) { return to_dot(d); })
        .def("__repr__", [](const Dpa& d) {
            return "<Dpa states=" + std::to_string(d.num_states) + ">";
        });

    py::class_<PyTranslation>(m, "Translation")
        .def_property_readonly("dpa", [](const PyTranslation& t) { return t.dpa; })
        .def_property_readonly("ldba", [](const PyTranslation& t) { return t.ldba; })
        .def_property_readonly("stats",
                               [](const PyTranslation& t) { return stats_dict(t.stats); });

    m.def(
        "translate",
        [](const std::string& formula, bool reduce, bool compress, bool keep_smallest,
           bool race, std::size_t budget) {
            PipelineConfig cfg;
            cfg.reduce = reduce;
            cfg.compress = compress;
            cfg.keep_smallest = keep_smallest;
            cfg.race = race;
            cfg.budget = budget;
            PipelineResult r =
                race ? negation_race(formula, cfg) : translate_pipeline(formula, cfg);
            return PyTranslation{std::make_shared<Dpa>(std::move(r.dpa)),
                                 std::make_shared<Ldba>(std::move(r.ldba)), r.stats};
        },
        py::arg("formula"), py::arg("reduce") = true, py::arg("compress") = true,
        py::arg("keep_smallest") = false, py::arg("race") = false,
        py::arg("budget") = std::size_t{1000000},
        "Translate an LTL formula to a deterministic parity automaton.");

    m.def(
        "eval_formula",
        [](const std::string& formula, const py::iterable& prefix, const py::iterable& period) {
            FormulaArena arena;
            FormulaId f = arena.to_nnf(parse_ltl(formula, arena));
            Alphabet alphabet = Alphabet::subsets(arena.props());
            return arena.eval_lasso(f, lasso_from_py(alphabet, prefix, period));
        },
        py::arg("formula"), py::arg("prefix"), py::arg("period"),
        "Ground-truth LTL semantics on the lasso word prefix.period^w.");

    m.def(
        "crossvalidate",
        [](const std::string& formula, std::size_t max_prefix, std::size_t max_period,
           std::optional<std::size_t> samples, std::uint64_t seed, std::size_t budget) {
            PipelineConfig cfg;
            cfg.budget = budget;
            CrossConfig cc;
            cc.max_prefix = max_prefix;
            cc.max_period = max_period;
            cc.samples = samples;
            cc.seed = seed;
            FormulaArena arena;
            parse_ltl(formula, arena);
            Alphabet alphabet = Alphabet::subsets(arena.props());
            return report_dict(crossvalidate(formula, cfg, cc), alphabet);
        },
        py::arg("formula"), py::arg("max_prefix") = 3, py::arg("max_period") = 3,
        py::arg("samples") = std::nullopt, py::arg("seed") = 1,
        py::arg("budget") = std::size_t{1000000},
        "Check all acceptance oracles against each other on lasso words.");

    m.def(
        "random_ldba",
        [](std::uint64_t seed, std::uint32_t states, std::uint32_t letters, double density,
           double acc_density) {
            return std::make_shared<Ldba>(
                rand_ldba(seed, states, letters, density, acc_density));
        },
        py::arg("seed"), py::arg("states") = 5, py::arg("letters") = 2,
        py::arg("density") = 0.3, py::arg("acc_density") = 0.4,
        "Generate a random well-formed LDBA, reproducible per seed.");

    m.def(
        "determinize",
        [](const Ldba& a, std::size_t budget) {
            Ldba folded = eliminate_jumps(a);
            auto diags = validate_ldba(folded);
            if (!diags.empty())
                throw py::value_error("not a well-formed LDBA: " + diags.front());
            return std::make_shared<Dpa>(
                compress_colors(construct_dpa(folded, choose_ord(folded), budget)));
        },
        py::arg("ldba"), py::arg("budget") = std::size_t{1000000},
        "Determinize an LDBA into a parity automaton (colors compressed).");

    m.def("parse_hoa", [](const std::string& text) -> py::object {
        Automaton a = parse_hoa(text);
        if (std::holds_alternative<Ldba>(a))
            return py::cast(std::make_shared<Ldba>(std::get<Ldba>(std::move(a))));
        return py::cast(std::make_shared<Dpa>(std::get<Dpa>(std::move(a))));
    });

    m.def(
        "family_formula",
        [](const std::string& family, std::uint32_t n) {
            if (family == "r")
                return family_formula(Family::R, n);
            if (family == "g")
                return family_formula(Family::G, n);
            if (family == "f")
                return family_formula(Family::F, n);
            if (family == "theta")
                return family_formula(Family::Theta, n);
            throw py::value_error("family must be one of r, g, f, theta");
        },
        py::arg("family"), py::arg("n"), "Parametric benchmark formula text.");
}
