#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "izro/algebra.hpp"
#include "izro/congruence.hpp"
#include "izro/proof.hpp"
#include "izro/search.hpp"
#include "izro/term.hpp"
#include "izro/variety.hpp"

namespace py = pybind11;
using namespace izro;

namespace {

py::dict check_result_dict(const CheckResult& r) {
  py::dict d;
  d["holds"] = r.holds;
  if (r.counterexample) {
    py::dict cex;
    cex["assignment"] = r.counterexample->assignment;
    cex["lhs"] = r.counterexample->lhs_value;
    cex["rhs"] = r.counterexample->rhs_value;
    d["counterexample"] = cex;
  }
  return d;
}

CheckResult check_any(const FiniteAlgebra& A, const std::string& spec) {
  if (spec.find('=') != std::string::npos ||
      spec.find("|-") != std::string::npos) {
    ConditionalIdentity ci = parse_identity(spec);
    return ci.is_conditional() ? check_conditional(A, ci)
                               : check_identity(A, ci.conclusion);
  }
  return check_label(A, spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite implication-zroupoid workbench";

  py::register_exception<Error>(m, "IzroError");

  py::class_<Term>(m, "Term")
      .def_static("parse", &parse_term)
      .def("__str__", &format_term)
      .def("__repr__",
           [](const Term& t) { return "Term(" + format_term(t) + ")"; })
      .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
      .def("__hash__", &Term::hash)
      .def("variables", &Term::variables)
      .def("normalize_comp", &Term::normalize_comp)
      .def("substitute", &Term::substitute);
  m.def("parse_term", &parse_term);
  m.def("format_term", &format_term);

  py::class_<Identity>(m, "Identity")
      .def_readonly("lhs", &Identity::lhs)
      .def_readonly("rhs", &Identity::rhs)
      .def_readonly("name", &Identity::name)
      .def("__str__", &Identity::str);

  m.def("catalog_labels",
        [] { return builtin_catalog().labels(); });
  m.def("catalog_identity",
        [](const std::string& label) { return builtin_catalog().get(label).str(); });

  py::class_<FiniteAlgebra>(m, "Algebra")
      .def(py::init([](std::vector<std::vector<int>> table,
                       std::string name) {
             return FiniteAlgebra(std::move(table), std::move(name));
           }),
           py::arg("table"), py::arg("name") = std::string{})
      .def_static("builtin", [](const std::string& name) {
        return builtin_algebra(name);
      })
      .def_static("from_json_file", &load_algebra_json)
      .def_property_readonly("size", &FiniteAlgebra::size)
      .def_property_readonly("name", &FiniteAlgebra::name)
      .def("op", &FiniteAlgebra::op)
      .def("table", &FiniteAlgebra::rows)
      .def("to_json", &algebra_to_json)
      .def("__repr__",
           [](const FiniteAlgebra& a) {
             return "Algebra(" +
                    (a.name().empty() ? std::to_string(a.size()) + " elements"
                                      : a.name()) +
                    ")";
           })
      .def("__eq__", [](const FiniteAlgebra& a, const FiniteAlgebra& b) {
        return a == b;
      });

  m.def("builtin_algebra_names", &builtin_algebra_names);
  m.def("evaluate", &evaluate);
  m.def(
      "check",
      [](const FiniteAlgebra& A, const std::string& spec) {
        return check_any(A, spec).holds;
      },
      py::arg("algebra"), py::arg("identity"),
      "Check a catalog label or literal 'lhs = rhs' text.");
  m.def("check_dict", [](const FiniteAlgebra& A, const std::string& spec) {
    return check_result_dict(check_any(A, spec));
  });
  m.def("direct_product", &direct_product);
  m.def("subuniverse_closure", &subuniverse_closure);
  m.def("induced_algebra", &induced_algebra);
  m.def("canonical_table", [](const FiniteAlgebra& A) {
    std::vector<int> out;
    for (auto v : canonical_form(A)) out.push_back(v);
    return out;
  });
  m.def("isomorphic", &isomorphic);

  py::class_<Partition>(m, "Partition")
      .def_static("from_blocks", &Partition::from_blocks)
      .def_property_readonly("blocks", &Partition::blocks)
      .def("__str__", &Partition::str)
      .def("__eq__", [](const Partition& a, const Partition& b) {
        return a == b;
      });

  m.def("principal_congruence", &principal_congruence);
  m.def("all_congruences", &all_congruences);
  m.def("quotient", &quotient);
  m.def("is_simple", &is_simple);
  m.def("is_subdirectly_irreducible", [](const FiniteAlgebra& A) {
    auto [si, monolith] = is_subdirectly_irreducible(A);
    return py::make_tuple(si, monolith ? py::cast(*monolith) : py::none());
  });
  m.def("derived_relation",
        [](const FiniteAlgebra& A, const std::string& kind) {
          auto rel = derived_relation(A, relation_kind_from_string(kind));
          return std::vector<std::pair<int, int>>(rel.begin(), rel.end());
        });
  m.def("is_congruence",
        [](const FiniteAlgebra& A,
           const std::vector<std::pair<int, int>>& pairs) {
          Relation rel(pairs.begin(), pairs.end());
          CongruenceCheck c = is_congruence(A, rel);
          py::dict d;
          d["equivalence"] = c.is_equivalence;
          d["congruence"] = c.is_congruence;
          d["diagnostic"] = c.diagnostic;
          return d;
        });

  m.def(
      "enumerate_models",
      [](int n, bool i20, bool simple_only, long long budget, int threads) {
        SearchConfig cfg;
        cfg.n = n;
        if (i20) cfg.extra_identities.push_back("I20");
        cfg.simple_only = simple_only;
        if (budget > 0) cfg.budget = budget;
        cfg.threads = threads;
        ModelCorpus corpus = enumerate(cfg);
        py::list models;
        for (const auto& e : corpus.models) {
          py::dict d;
          d["algebra"] = e.algebra;
          d["simple"] = e.simple;
          d["si"] = e.subdirectly_irreducible;
          d["i20"] = e.in_i20;
          d["dm"] = e.in_dm;
          models.append(d);
        }
        py::dict out;
        out["models"] = models;
        out["exhaustive"] = corpus.exhaustive;
        return out;
      },
      py::arg("n"), py::arg("i20") = false, py::arg("simple_only") = false,
      py::arg("budget") = 0, py::arg("threads") = 1);
  m.def("classify_simples", [](int max_n) {
    SimpleCensus census = classify_simples(max_n);
    py::dict out;
    out["simples"] = census.simples;
    out["incomplete_sizes"] = census.incomplete_sizes;
    return out;
  });

  m.def(
      "free_algebra",
      [](const std::vector<FiniteAlgebra>& K, int k, std::size_t budget) {
        FreeAlgebraResult f = free_algebra(K, k, budget);
        py::dict out;
        out["algebra"] = f.algebra;
        out["generators"] = f.generators;
        return out;
      },
      py::arg("K"), py::arg("k"), py::arg("budget") = 1'000'000);
  m.def(
      "in_variety",
      [](const FiniteAlgebra& A, const std::vector<FiniteAlgebra>& K) {
        MembershipVerdict v = in_variety(A, K);
        py::dict out;
        out["verdict"] = v.kind == MembershipVerdict::Kind::Member
                             ? "member"
                             : v.kind == MembershipVerdict::Kind::NonMember
                                   ? "non-member"
                                   : "unknown";
        if (v.separating_identity)
          out["separating_identity"] = v.separating_identity->str();
        return out;
      },
      py::arg("algebra"), py::arg("K"));
  m.def("variety_lattice_dot", [](const std::vector<FiniteAlgebra>& base) {
    return variety_poset(all_subsets(base)).to_dot();
  });
  m.def("variety_lattice_nodes", [](const std::vector<FiniteAlgebra>& base) {
    VarietyPoset poset = variety_poset(all_subsets(base));
    std::vector<std::string> labels;
    for (const auto& node : poset.nodes) labels.push_back(node.label());
    return labels;
  });
  m.def("lattice_shape_ok", [](const std::vector<FiniteAlgebra>& base) {
    return check_lattice_shape(variety_poset(all_subsets(base))).ok;
  });

  m.def("replay_text", [](const std::string& text) {
    ProofScript script = load_script(text);
    Verdict v = replay(script);
    py::dict out;
    out["proof"] = script.name;
    out["ok"] = v.ok;
    if (v.failing_step) out["failing_step"] = *v.failing_step;
    if (!v.diagnostic.empty()) out["diagnostic"] = v.diagnostic;
    return out;
  });
  m.def("replay_file", [](const std::string& path) {
    ProofScript script = load_script_file(path);
    Verdict v = replay(script);
    py::dict out;
    out["proof"] = script.name;
    out["ok"] = v.ok;
    if (v.failing_step) out["failing_step"] = *v.failing_step;
    if (!v.diagnostic.empty()) out["diagnostic"] = v.diagnostic;
    return out;
  });
  m.def("cross_check_file",
        [](const std::string& path, const std::vector<FiniteAlgebra>& corpus) {
          ProofScript script = load_script_file(path);
          return cross_check(script, corpus).all_hold();
        });
}
