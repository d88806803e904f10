#pragma once

// The `subent` command line: argument grammar, closed-form lookups used by
// the sweeps, and the plot-ready scan table.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace subent::cli {

struct ScanRow {
  double F = 0.0;
  std::optional<double> E_closed;  // absent where no closed form is proven
  double E_numeric = 0.0;
  std::vector<double> theta_stars;
  std::optional<double> gap;  // E_numeric - E_closed
};

enum class Format { Text, Csv, Json };

/// "%#.9g", with magnitudes below 1e-12 printed as zero.
std::string format_real(double v);

/// Header `F,E_closed,E_numeric,theta_stars,gap`; theta_stars joined by ';'
/// with 9 decimals; absent values are empty fields (null in JSON).
void emit_scan(const std::vector<ScanRow>& rows, Format format, std::ostream& out);

/// E(rho_F; Diagonal) where a closed form is known:
///   d = 2        the qubit formula, all F;
///   d = 3        ln 2 at F = 0, the single-orbit formula on [F*, 8/9],
///                the chord to (1, ln 3) above 8/9;
///   d >= 4       the single-orbit formula on [1/d, F**], the chord above.
std::optional<double> symmetric_closed_form(std::size_t d, double fidelity);

/// Entanglement of formation of isotropic(d, F): 0 up to 1/d, the
/// single-orbit formula up to 4(d-1)/d^2, linear to (1, ln d) above.
double isotropic_closed_form(std::size_t d, double fidelity);

/// Runs one command. argv[0] is the program name. Returns the exit code:
/// 0 success, 1 computation error, 2 usage error.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace subent::cli
