/**
 * @file report.hpp
 * @brief Tabular output of scenario results and the built-in self-check.
 *
 * CSV columns are `param,value,closed_form,abs_error`; numbers use 12
 * significant digits and `\n` line endings. `param` joins the angle
 * parameters as `name=degrees` with `;`, or carries the row label.
 */

#pragma once

#include <span>
#include <string>
#include <vector>

#include "pairsim/experiments.hpp"
#include "pairsim/scenario.hpp"

namespace pairsim {

inline constexpr double kDefaultTolerance = 1e-9;

enum ExitCode : int { exit_ok = 0, exit_input_error = 1, exit_check_failed = 2 };

std::string param_label(const ScenarioResult& row);

std::string render_csv(std::span<const ScenarioResult> rows);
std::string render_json(std::span<const ScenarioResult> rows);
std::string render(std::span<const ScenarioResult> rows, OutputFormat format);

/**
 * Reads a table written by render_csv back into rows carrying the param
 * column as label, the value and the closed form. The abs_error column is
 * ignored. Throws ParseError (1-based line) on malformed input.
 */
std::vector<ScenarioResult> parse_csv(std::string_view text);

/// Whether a row with a closed form lies within min(row tolerance, tolerance).
bool row_passes(const ScenarioResult& row, double tolerance = kDefaultTolerance);

/// exit_check_failed if any row with a closed form misses it, else exit_ok.
int check_rows(std::span<const ScenarioResult> rows, double tolerance = kDefaultTolerance);

/**
 * One row per reproduced prediction (criteria 1 to 10 of the acceptance
 * table). `value` is the measured quantity, `closed_form` the target and
 * `tolerance` the allowed deviation.
 */
std::vector<ScenarioResult> selfcheck_table();

}  // namespace pairsim
