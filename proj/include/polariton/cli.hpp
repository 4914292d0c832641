#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polariton/kinematics.hpp"
#include "polariton/model_params.hpp"

namespace polariton {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Dataset {
    std::vector<std::string> header;  // written as '#' comment lines
    std::vector<Table> tables;
    long nan_cells() const;
};

enum class Format { Csv, Json };

struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    std::vector<double> values() const;
};

SweepAxis parse_sweep(std::string_view spec);  // name:start:stop:count
std::vector<double> linspace(double start, double stop, int count);

void write_csv(std::ostream& os, const Dataset& ds, const Table& t);
void write_json(std::ostream& os, const Dataset& ds);
// One table: exactly `path`. Several CSV tables: name inserted before the extension.
// Empty path writes to `os`.
void write_dataset(const Dataset& ds, Format f, const std::string& path, std::ostream& os);

// Parameter sets behind the figure presets.
ModelParams fig2_params(double density_ratio);
ModelParams fig3a_params();
ModelParams fig3b_params();
ModelParams fig5_params();
CellSpec fig5_cell();  // 10 cm cell for the reference atom

Dataset groupvel_sweep(const ModelParams& base, const std::vector<SweepAxis>& axes, bool numeric = false);
Dataset run_preset(std::string_view id);

// Full command line; returns the process exit code (0, 2 config, 3 numerical, 4 I/O).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polariton
