// Thin string-level bindings over the C++ core: texts in, texts (or small
// tuples) out, so Python callers never hold raw library objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "poslog/batteries.hpp"
#include "poslog/error.hpp"
#include "poslog/functor.hpp"
#include "poslog/lattice.hpp"
#include "poslog/logic.hpp"
#include "poslog/posetify.hpp"
#include "poslog/predlift.hpp"

namespace py = pybind11;
using namespace poslog;

namespace {

FinBA algebra_of(const std::string& spec) {
  if (spec.rfind("free:", 0) == 0) return free_BA(std::stoi(spec.substr(5))).alg;
  FinDL a = FinDL::parse(spec);
  if (!a.is_boolean()) throw input_error("algebra text must be Boolean");
  return a;
}

}  // namespace

PYBIND11_MODULE(_poslog, m) {
  m.doc() = "exact finite-model workbench for modal logic over posets";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);

  m.def("translate", [](const std::string& f) {
    return beta_translate(Formula::parse(f)).to_string();
  }, py::arg("formula"), "Replace diamonds by negated boxes.");

  m.def("parse_formula", [](const std::string& f) {
    return Formula::parse(f).to_string();
  }, py::arg("formula"), "Parse and reprint in canonical syntax.");

  m.def("posetify", [](const std::string& functor, const std::string& poset) {
    return posetify_obj(FunctorExpr::parse(functor), Poset::parse(poset))
        .poset.to_text();
  }, py::arg("functor"), py::arg("poset"),
     "Universal monotone extension applied to a poset text.");

  m.def("convex_powerset", [](const std::string& poset) {
    return convex_powerset(Poset::parse(poset)).to_text();
  }, py::arg("poset"));

  m.def("eval_formula", [](const std::string& formula, const std::string& model,
                           const std::string& liftings) {
    Formula f = Formula::parse(formula);
    if (model_text_is_ordered(model)) {
      if (!liftings.empty())
        throw input_error("lifting tables apply to Kripke models only");
      OrderedCoalgebra m = OrderedCoalgebra::parse(model);
      return subset_label(m.states.carrier, eval_pos(f, m));
    }
    LiftingTable table;
    if (!liftings.empty()) table = parse_lifting_table(liftings);
    Coalgebra m = Coalgebra::parse(model);
    return subset_label(m.states, eval_bool(f, m, table));
  }, py::arg("formula"), py::arg("model"), py::arg("liftings") = "",
     "Satisfying states of a formula on a model text.");

  m.def("check_weak_pullbacks", [](const std::string& functor, int bound) {
    WpbReport r = preserves_weak_pullbacks(FunctorExpr::parse(functor), bound);
    return std::make_pair(r.preserves, r.cospan);
  }, py::arg("functor"), py::arg("bound") = 2);

  m.def("check_exact_squares", [](const std::string& functor, int bound) {
    ExsqReport r = preserves_exact_squares(FunctorExpr::parse(functor), bound);
    return std::make_pair(r.preserves, r.witness);
  }, py::arg("functor"), py::arg("bound") = 2);

  m.def("verify_dualities", [](int bound) {
    DualityReport r = verify_dualities(bound);
    return std::make_pair(r.pass, r.witness);
  }, py::arg("bound") = 2);

  m.def("beta", [](const std::string& functor, const std::string& algebra) {
    FinBA a = algebra_of(algebra);
    if (auto g = parse_named_pos_functor(functor)) {
      NamedBetaReport r = build_beta_named(a, *g);
      return py::make_tuple(r.iso, r.lhs_size, r.rhs_size, r.detail);
    }
    BetaReport r = build_beta(a, FunctorExpr::parse(functor));
    return py::make_tuple(r.iso, r.beta.dom.size(), r.beta.cod.size(), r.detail);
  }, py::arg("functor"), py::arg("algebra") = "free:0",
     "One-step comparison map; returns (iso, lhs, rhs, detail).");

  m.def("liftings", [](const std::string& functor, int arity, bool monotone) {
    FunctorExpr t = FunctorExpr::parse(functor);
    const TSet& ts = obj_full(t, bool_tuples(arity));
    std::vector<std::string> out;
    for (const Lifting& l : enumerate_liftings(t, arity)) {
      if (monotone && !is_monotone(l)) continue;
      out.push_back(subset_label(ts.elems, l.value));
    }
    return out;
  }, py::arg("functor"), py::arg("arity") = 1, py::arg("monotone") = false);

  m.def("dunn_counterexample", [] {
    WkReport r = wk_counterexample();
    return py::make_tuple(r.pass, r.wk_inserter, r.wk_apex, r.detail);
  }, "Replays the split-coinserter counterexample (4 vs 2, not surjective).");

  m.def("nstep_injective", [](const std::string& functor, int n) {
    NStepReport r = n_step_injectivity(FunctorExpr::parse(functor), n);
    return std::make_pair(r.injective, r.sizes);
  }, py::arg("functor"), py::arg("n") = 1);
}
