#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtdist/analysis.hpp"
#include "mtdist/distance.hpp"
#include "mtdist/io.hpp"
#include "mtdist/oracle.hpp"
#include "mtdist/scalar_field.hpp"

namespace py = pybind11;
using namespace mtdist;

namespace {

MergeTree treeFromEdges(const std::vector<std::tuple<NodeId, NodeId, double>>& edges) {
  std::vector<Edge> out;
  for (const auto& [c, p, l] : edges) out.push_back({c, p, l});
  auto t = MergeTree::fromEdges(out);
  auto issues = validate(t);
  if (!issues.empty()) throw TreeError(issues.front());
  return t;
}

std::vector<std::tuple<NodeId, NodeId, double>> edgeList(const MergeTree& t) {
  std::vector<std::tuple<NodeId, NodeId, double>> out;
  for (const auto& e : t.edges()) out.emplace_back(e.child, e.parent, e.label);
  return out;
}

ScalarGrid gridFromRows(const std::vector<std::vector<double>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> values;
  for (const auto& r : rows) {
    if (r.size() != cols) throw GridError("rows have different lengths");
    values.insert(values.end(), r.begin(), r.end());
  }
  return ScalarGrid::make(rows.size(), cols, std::move(values));
}

}  // namespace

PYBIND11_MODULE(_mtdist, m) {
  m.doc() = "Path mapping distance between merge trees";

  py::register_exception<TreeError>(m, "TreeError", PyExc_ValueError);
  py::register_exception<GridError>(m, "GridError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<MergeTree>(m, "MergeTree")
      .def(py::init<>())
      .def_static("from_edges", &treeFromEdges, py::arg("edges"))
      .def_property_readonly("root", &MergeTree::root)
      .def("edges", &edgeList)
      .def("edge_count", &MergeTree::edgeCount)
      .def("is_empty", &MergeTree::isEmpty)
      .def("total_persistence", [](const MergeTree& t) { return totalPersistence(t); })
      .def("canonical_form", [](const MergeTree& t) { return canonicalForm(t); })
      .def("__repr__", [](const MergeTree& t) {
        return "<MergeTree with " + std::to_string(t.edgeCount()) + " edges>";
      });

  m.def("parse_tree", [](const std::string& text) { return parseTree(text); }, py::arg("text"));
  m.def("format_tree", &formatTree, py::arg("tree"));
  m.def("distance", [](const MergeTree& a, const MergeTree& b) { return distance(a, b); }, py::arg("t1"),
        py::arg("t2"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "distance_with_mapping",
      [](const MergeTree& a, const MergeTree& b) {
        auto r = distanceWithMapping(a, b);
        std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> pairs;
        for (const auto& [p, q] : r.mapping.pairs) pairs.emplace_back(p.vertices, q.vertices);
        return py::make_tuple(r.distance, pairs);
      },
      py::arg("t1"), py::arg("t2"));
  m.def(
      "distance_matrix",
      [](const std::vector<MergeTree>& trees, std::size_t workers) {
        auto d = distanceMatrix(trees, workers);
        std::vector<std::vector<double>> rows(d.n, std::vector<double>(d.n));
        for (std::size_t i = 0; i < d.n; ++i) {
          for (std::size_t j = 0; j < d.n; ++j) rows[i][j] = d.at(i, j);
        }
        return rows;
      },
      py::arg("trees"), py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def(
      "join_tree",
      [](const std::vector<std::vector<double>>& rows, int conn) {
        return computeJoinTree(gridFromRows(rows), conn == 8 ? Connectivity::Eight : Connectivity::Four);
      },
      py::arg("values"), py::arg("conn") = 4);
  m.def(
      "split_tree",
      [](const std::vector<std::vector<double>>& rows, int conn) {
        return computeSplitTree(gridFromRows(rows), conn == 8 ? Connectivity::Eight : Connectivity::Four);
      },
      py::arg("values"), py::arg("conn") = 4);
  m.def("simplify", &simplify, py::arg("tree"), py::arg("epsilon"));
  m.def(
      "random_tree",
      [](std::uint64_t seed, std::size_t edges, std::size_t maxDegree) {
        return randomTree({seed, edges, 1.0, 10.0, maxDegree});
      },
      py::arg("seed"), py::arg("edges"), py::arg("max_degree") = 2);
}
