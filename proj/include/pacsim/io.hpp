#ifndef PACSIM_IO_HPP
#define PACSIM_IO_HPP

#include "pacsim/analysis.hpp"
#include "pacsim/fock.hpp"
#include "pacsim/homodyne.hpp"
#include "pacsim/tomography.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace pacsim {

using Json = nlohmann::json;

// {dim, re[D][D], im[D][D]}, row-major
Json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

void save_density(const DensityMatrix& rho, const std::string& path);
DensityMatrix load_density(const std::string& path);

// CSV with header "theta,x", LF line endings; herald column optional.
void save_records(const std::vector<QuadratureRecord>& records, const std::string& path,
                  int herald_n = -1);
std::vector<QuadratureRecord> load_records(const std::string& path);

void save_wigner_csv(const WignerGrid& grid, const std::string& path);

Json maxlik_report_to_json(const MaxLikReport& report);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace pacsim

#endif
