#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "spinel/driver.hpp"
#include "spinel/internal_checker.hpp"
#include "spinel/matcher.hpp"
#include "spinel/parser.hpp"
#include "spinel/pretty.hpp"
#include "spinel/spec_oracle.hpp"

namespace py = pybind11;
using namespace spinel;

namespace {

Context declarations(const std::string& decls) { return parse_program(decls).context; }

// Goals of one growing context, like a REPL session.
class Session {
 public:
  explicit Session(const std::string& decls) : ctx_(declarations(decls)) {}

  /// Declarations return None; goals return the JSON report.
  std::optional<std::string> run(const std::string& statement, bool trace, bool spec_verify) {
    Statement st = parse_statement(statement, ctx_);
    if (st.kind != Statement::Kind::Goal) {
      ctx_ = st.ctx;
      return std::nullopt;
    }
    return goal_to_json(run_goal(st, {trace, spec_verify}));
  }

  std::string render(const std::string& goal, bool color) {
    Statement st = parse_statement(goal, ctx_);
    if (st.kind != Statement::Kind::Goal) throw py::value_error("not a goal");
    return render_goal(run_goal(st), true, color);
  }

  std::vector<std::pair<std::string, std::optional<std::string>>> context() const {
    std::vector<std::pair<std::string, std::optional<std::string>>> out;
    for (const auto& e : ctx_.entries())
      out.emplace_back(e.name, e.type ? std::optional(pretty_type(*e.type)) : std::nullopt);
    return out;
  }

 private:
  Context ctx_;
};

std::vector<std::string> run_source(const std::string& source, bool trace, bool spec_verify) {
  std::vector<std::string> out;
  for (const auto& g : run_program(parse_program(source), {trace, spec_verify}).goals)
    out.push_back(goal_to_json(g));
  return out;
}

std::optional<std::pair<std::string, std::string>> match(const std::vector<std::string>& metas,
                                                         const std::string& type,
                                                         const std::string& proto,
                                                         const std::string& decls) {
  Context ctx = declarations(decls);
  NameSet ms(metas.begin(), metas.end());
  auto r = match_proto(ms, parse_type(type, ctx, true), parse_prototype(proto, ctx, true));
  if (!r) return std::nullopt;
  return std::pair{pretty_solution(r->solution), pretty_decorated(r->decorated)};
}

std::vector<std::string> erasures(const std::string& term, const std::string& decls) {
  Context ctx = declarations(decls);
  std::vector<std::string> out;
  for (const auto& t : enumerate_erasures(parse_term(term, ctx))) out.push_back(pretty_term(t));
  return out;
}

std::string internal_type(const std::string& term, const std::string& decls) {
  Context ctx = declarations(decls);
  return pretty_type(check_internal(ctx, parse_term(term, ctx)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spine-local type inference for System F";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InternalTypeError>(m, "InternalTypeError", PyExc_TypeError);
  py::register_exception<InternalError>(m, "EngineBug", PyExc_RuntimeError);

  m.def("run", &run_source, py::arg("source"), py::arg("trace") = false,
        py::arg("spec_verify") = false,
        "Run every goal of a program; returns one JSON report per goal.");
  m.def("match", &match, py::arg("metas"), py::arg("type"), py::arg("prototype"),
        py::arg("decls") = "",
        "Prototype matching; returns (solution, decorated type) or None.");
  m.def("erasures", &erasures, py::arg("term"), py::arg("decls") = "");
  m.def("internal_type", &internal_type, py::arg("term"), py::arg("decls") = "",
        "Type of an explicitly typed term.");
  m.def("pretty_type",
        [](const std::string& src, const std::string& decls) {
          return pretty_type(parse_type(src, declarations(decls), true));
        },
        py::arg("source"), py::arg("decls") = "");

  py::class_<Session>(m, "Session")
      .def(py::init<const std::string&>(), py::arg("decls") = "")
      .def("run", &Session::run, py::arg("statement"), py::arg("trace") = false,
           py::arg("spec_verify") = false)
      .def("render", &Session::render, py::arg("goal"), py::arg("color") = false)
      .def("context", &Session::context);
}
