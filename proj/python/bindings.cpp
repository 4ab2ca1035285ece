#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "epiladder/errors.hpp"
#include "epiladder/generate.hpp"
#include "epiladder/grader.hpp"
#include "epiladder/grid.hpp"
#include "epiladder/harness.hpp"
#include "epiladder/kripke.hpp"
#include "epiladder/narrative.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace epiladder;

namespace {

// Values cross the boundary as JSON text so Python sees plain dicts and lists.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Announcement bound_from(const std::string& type, int value) {
  auto t = bound_type_from_token(type);
  if (!t) throw ConfigError("bound type must be 'lower' or 'upper'");
  return {*t, value};
}

py::list trace_to_py(const RoundTrace& trace) {
  py::list out;
  for (const auto& r : trace) {
    py::list answers;
    for (Answer a : r.answers) answers.append(std::string(to_token(a)));
    py::dict d;
    d["answers"] = answers;
    d["surviving_after"] = r.surviving_after;
    out.append(d);
  }
  return out;
}

std::vector<LabeledInstance> labeled_from(const py::list& instances, unsigned workers) {
  std::vector<LabeledInstance> out;
  std::vector<PuzzleInstance> pending;
  std::vector<std::size_t> slots;
  for (const auto& obj : instances) {
    InstanceLine line = instance_from_json(from_py(obj));
    if (line.label) {
      out.push_back({std::move(line.instance), std::move(*line.label)});
    } else {
      slots.push_back(out.size());
      out.push_back({line.instance, {}});
      pending.push_back(std::move(line.instance));
    }
  }
  if (!pending.empty()) {
    auto solved = attach_ground_truth(pending, workers);
    for (std::size_t i = 0; i < slots.size(); ++i) out[slots[i]] = std::move(solved.items[i]);
  }
  return out;
}

GenerationGrid grid_for(const std::string& grid, Rung rung) {
  if (grid == "full") return full_grid(rung);
  if (grid == "desk") return desk_grid(rung);
  return load_grid(grid);
}

}  // namespace

PYBIND11_MODULE(epiladder, m) {
  m.doc() = "Possible-worlds solver, instance generator, prompt renderer and grader.";
  m.attr("__version__") = EPILADDER_VERSION;

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(e.kind()) + ": " + e.what()).c_str());
    }
  });

  m.def(
      "solve",
      [](const std::vector<std::vector<int>>& obs, const std::string& actual, const std::string& bound_type,
         int bound_value, int queried, int round) {
        SolverInput in{ObservationMatrix::from_rows(obs), World::parse(actual), bound_from(bound_type, bound_value),
                       queried, round};
        const GroundTruth truth = solve(in);
        py::dict d;
        d["answer"] = std::string(to_token(truth.answer));
        d["trace"] = trace_to_py(truth.trace);
        d["initial_worlds"] = truth.initial_worlds;
        d["after_announcement"] = truth.after_announcement;
        return d;
      },
      py::arg("obs"), py::arg("actual"), py::arg("bound_type"), py::arg("bound_value"), py::arg("queried") = 0,
      py::arg("round") = 1,
      "Queried agent's answer at `round`. `actual` lists statuses agent 0 first, e.g. \"01\".");

  m.def(
      "simulate",
      [](const std::vector<std::vector<int>>& obs, const std::string& actual, const std::string& bound_type,
         int bound_value, int rounds) {
        return trace_to_py(simulate_rounds(ObservationMatrix::from_rows(obs), World::parse(actual),
                                           bound_from(bound_type, bound_value), rounds));
      },
      py::arg("obs"), py::arg("actual"), py::arg("bound_type"), py::arg("bound_value"), py::arg("rounds"));

  m.def(
      "parse_response",
      [](const std::string& text, bool case_insensitive) {
        const auto parsed = parse_response(text, {case_insensitive});
        py::dict d;
        d["verdict"] = std::string(to_token(parsed.verdict));
        d["matched_line"] = parsed.matched_line;
        d["notes"] = parsed.notes;
        return d;
      },
      py::arg("text"), py::arg("case_insensitive") = false);

  m.def(
      "generate",
      [](int rung_number, const std::string& grid, std::optional<std::uint64_t> seed, std::optional<int> count) {
        const Rung rung = rung_from_number(rung_number);
        GenerationGrid g = grid_for(grid, rung);
        if (seed) g.seed = *seed;
        if (count) g.count = *count;
        auto insts = rung == Rung::III ? sample_rung3(g.count, g.seed, g) : enumerate_rung_grid(g, rung);
        py::list out;
        for (const auto& inst : insts) out.append(to_py(to_json(inst, std::nullopt)));
        return out;
      },
      py::arg("rung"), py::arg("grid") = "full", py::arg("seed") = py::none(), py::arg("count") = py::none(),
      "Instances as dicts with the JSONL field names; `grid` is 'full', 'desk' or a config path.");

  m.def(
      "label",
      [](const py::list& instances, unsigned workers) {
        py::list out;
        for (const auto& item : labeled_from(instances, workers)) out.append(to_py(to_json(item.instance, item.label)));
        return out;
      },
      py::arg("instances"), py::arg("workers") = 0, "Attaches ground truth and traces.");

  m.def(
      "render",
      [](const py::dict& instance, const std::string& style) {
        py::list one;
        one.append(instance);
        const auto item = labeled_from(one, 1).front();
        EvalSettings settings;
        if (style == "sentences") settings.render.observation_style = ObservationStyle::Sentences;
        else if (style != "matrix") throw ConfigError("style must be 'matrix' or 'sentences'");
        return render_for(item, settings).text;
      },
      py::arg("instance"), py::arg("style") = "matrix");

  m.def(
      "evaluate",
      [](const py::list& instances, const py::object& responder, bool case_insensitive) {
        const auto items = labeled_from(instances, 0);
        EvalSettings settings;
        settings.grader.case_insensitive = case_insensitive;
        std::unique_ptr<Responder> r;
        if (py::isinstance<py::str>(responder)) {
          r = make_responder(parse_responder(responder.cast<std::string>()));
        } else {
          auto fn = responder.cast<std::function<std::string(const std::string&)>>();
          const std::string id = py::str(py::getattr(responder, "__name__", py::str("callable")));
          r = make_function_responder("python:" + id, [fn](const PromptBundle& p) { return fn(p.text); });
        }
        const auto records = run_eval(items, *r, settings);
        py::list out;
        for (const auto& rec : records) out.append(to_py(to_json(rec)));
        return out;
      },
      py::arg("instances"), py::arg("responder") = "oracle", py::arg("case_insensitive") = false,
      "Runs 'oracle', 'constant:<text>', 'scripted:<path>' or a Python callable prompt -> reply.");

  m.def(
      "metrics",
      [](const py::list& records) {
        std::vector<EvalRecord> recs;
        for (const auto& obj : records) recs.push_back(record_from_json(from_py(obj)));
        return to_py(to_json(compute_metrics(recs)));
      },
      py::arg("records"));

  m.def(
      "majority_baseline",
      [](const std::vector<std::string>& labels) {
        std::vector<Answer> answers;
        for (const auto& l : labels) {
          auto a = answer_from_token(l);
          if (!a) throw ConfigError("unknown label '" + l + "'");
          answers.push_back(*a);
        }
        const auto b = majority_baseline(answers);
        py::dict d;
        d["label"] = std::string(to_token(b.label));
        d["accuracy"] = b.accuracy;
        d["tie"] = b.tie;
        return d;
      },
      py::arg("labels"));
}
