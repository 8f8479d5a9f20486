#include "pacsim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pacsim {

Json density_to_json(const DensityMatrix& rho) {
    int dim = rho.dim();
    Json re = Json::array(), im = Json::array();
    for (int r = 0; r < dim; ++r) {
        Json re_row = Json::array(), im_row = Json::array();
        for (int c = 0; c < dim; ++c) {
            re_row.push_back(rho.elems(r, c).real());
            im_row.push_back(rho.elems(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"dim", dim}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const Json& j) {
    int dim = j.at("dim").get<int>();
    const Json& re = j.at("re");
    const Json& im = j.at("im");
    if (static_cast<int>(re.size()) != dim || static_cast<int>(im.size()) != dim)
        throw std::runtime_error("density_from_json: dimension mismatch");
    DensityMatrix rho;
    rho.elems.resize(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            rho.elems(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    return rho;
}

void save_density(const DensityMatrix& rho, const std::string& path) {
    write_text(path, density_to_json(rho).dump(2) + "\n");
}

DensityMatrix load_density(const std::string& path) {
    return density_from_json(Json::parse(read_text(path)));
}

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, ptr);
}

}  // namespace

void save_records(const std::vector<QuadratureRecord>& records, const std::string& path,
                  int herald_n) {
    std::ostringstream out;
    out << (herald_n >= 0 ? "theta,x,herald_n\n" : "theta,x\n");
    for (const auto& rec : records) {
        out << format_double(rec.theta) << ',' << format_double(rec.x);
        if (herald_n >= 0) out << ',' << herald_n;
        out << '\n';
    }
    write_text(path, out.str());
}

std::vector<QuadratureRecord> load_records(const std::string& path) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("theta,x", 0) != 0)
        throw std::runtime_error("load_records: missing theta,x header in " + path);
    std::vector<QuadratureRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t c1 = line.find(',');
        if (c1 == std::string::npos)
            throw std::runtime_error("load_records: malformed row: " + line);
        std::size_t c2 = line.find(',', c1 + 1);
        std::string x_field = (c2 == std::string::npos) ? line.substr(c1 + 1)
                                                        : line.substr(c1 + 1, c2 - c1 - 1);
        records.push_back({std::stod(line.substr(0, c1)), std::stod(x_field)});
    }
    return records;
}

void save_wigner_csv(const WignerGrid& grid, const std::string& path) {
    std::ostringstream out;
    out << "x,p,W\n";
    for (std::size_t ix = 0; ix < grid.x_axis.size(); ++ix)
        for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip)
            out << format_double(grid.x_axis[ix]) << ',' << format_double(grid.p_axis[ip])
                << ',' << format_double(grid.values[ix][ip]) << '\n';
    write_text(path, out.str());
}

Json maxlik_report_to_json(const MaxLikReport& report) {
    return Json{{"iterations", report.iterations},
                {"loglik", report.log_likelihood},
                {"stop_reason",
                 report.stop_reason == StopReason::converged ? "converged" : "max_iter"},
                {"floored_bins", report.floored_bins}};
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace pacsim
