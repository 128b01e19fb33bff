#pragma once

#include <string>
#include <vector>

#include "rydgate/design_u1.hpp"
#include "rydgate/design_u2.hpp"
#include "rydgate/fixtures.hpp"

// Comparisons of computed designs against the embedded reference tables.
namespace rydgate::repro {

struct Check {
  std::string name;
  std::string computed;
  std::string expected;
  bool pass = false;
};

struct RowReport {
  std::string label;
  std::vector<Check> checks;
  bool pass() const;
};

GateDesignU1 design_from(const fixtures::Table1Row& row, bool with_decay = true);
GateDesignU2 design_from(const fixtures::Table2Row& row, bool with_decay = true);
GateDesignU1 design_from(const fixtures::Table3Row& row, bool with_decay = true);

// M integers, t_g ±1 ns, (β−2α)/π ±1e−4, E_ro within ×3, E_de ±2%; resonance
// residuals < 1e−6 cycles only when `residuals` is set.
std::vector<RowReport> check_table1(bool residuals);
// β−α−γ ≡ ±π/2 to 1e−3π, E_ro within ×3, E_de ±5%, (t_c, t_t) ±1 ns.
std::vector<RowReport> check_table2();
// t_g ±1 ns, (β−2α)/π ±1e−4, V = C6/L⁶ within 2% of the quoted value.
std::vector<RowReport> check_table3();

bool all_pass(const std::vector<RowReport>& rows);
std::string format_report(const std::vector<RowReport>& rows);

}  // namespace rydgate::repro
