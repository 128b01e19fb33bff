#include "rydgate/fixtures.hpp"

namespace rydgate::fixtures {

const std::array<Table1Row, 3>& table1() {
  static const std::array<Table1Row, 3> rows = {{
      {1, 10.0, 19.252, -35.1818, 0.32457, 4, {2, 1, -3}, 184.0, 2.31e-10, 45.5},
      {2, 10.0, -23.9977, 52.1713, 0.6217118, 10, {8, -3, -5}, 385.0, 6.80e-9, 59.9},
      {3, 10.0, -13.6468, 23.09272, 1.450098, 5, {4, -1, -3}, 296.0, 3.59e-8, 86.9},
  }};
  return rows;
}

const std::array<Table2Row, 4>& table2() {
  static const std::array<Table2Row, 4> rows = {{
      {1, 5.306482, 0.8152206, 10.0, 3.329994, -5.442221, 4.5, 1, 2, 186.0, 190.0, 3.80e-6, 86.8},
      {2, 5.306482, -0.8152206, 10.0, -3.329994, 5.442221, 1.5, 1, 2, 186.0, 190.0, 3.80e-6, 86.8},
      {3, 3.331812, 0.7475813, 10.0, 1.825131, -3.418967, 4.5, 1, 3, 293.0, 295.0, 3.42e-8, 140.0},
      {4, 3.331812, -0.7475813, 10.0, -1.825131, 3.418967, 3.5, 1, 3, 293.0, 295.0, 3.42e-8, 140.0},
  }};
  return rows;
}

const Table3Row& table3() {
  static const Table3Row row{0.8, -1.54016, 2.814544, 16.5, 2.30476, 4, -0.32457};
  return row;
}

const PulseEdgeReference& pulse_edge() {
  static const PulseEdgeReference ref{};
  return ref;
}

const NoiseReference& noise_reference() {
  static const NoiseReference ref{};
  return ref;
}

}  // namespace rydgate::fixtures
