#include "nilharm/io.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

namespace nilharm {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

json grid_json(const GridSpec& g) { return {{"L", g.L}, {"N", g.N}}; }

GridSpec grid_from(const json& j) {
  try {
    return GridSpec(j.at("L").get<std::vector<double>>(), j.at("N").get<std::vector<int>>());
  } catch (const json::exception& e) {
    fail(ErrorCode::IOError, std::string("bad grid record: ") + e.what());
  }
}

json lambda_json(const LambdaGrid& g) {
  return {{"nodes", std::vector<double>(g.nodes.data(), g.nodes.data() + g.size())},
          {"weights", std::vector<double>(g.weights.data(), g.weights.data() + g.size())}};
}

LambdaGrid lambda_from(const json& j) {
  auto n = j.at("nodes").get<std::vector<double>>();
  auto w = j.at("weights").get<std::vector<double>>();
  LambdaGrid g{Eigen::Map<Eigen::VectorXd>(n.data(), Eigen::Index(n.size())),
               Eigen::Map<Eigen::VectorXd>(w.data(), Eigen::Index(w.size()))};
  g.validate();
  return g;
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    fail(ErrorCode::IOError, path + ": " + e.what());
  }
}

std::string node_file(size_t m) {
  std::ostringstream os;
  os << "lambda_" << std::setw(3) << std::setfill('0') << m << ".bin";
  return os.str();
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IOError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IOError, "cannot write " + path);
  out << text;
}

void write_matrix(const std::string& path, const Eigen::MatrixXcd& A) {
  RowMat r = A;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IOError, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(r.data()), std::streamsize(r.size() * sizeof(cd)));
}

Eigen::MatrixXcd read_matrix(const std::string& path, Eigen::Index rows, Eigen::Index cols) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IOError, "cannot read " + path);
  RowMat r(rows, cols);
  in.read(reinterpret_cast<char*>(r.data()), std::streamsize(r.size() * sizeof(cd)));
  if (in.gcount() != std::streamsize(r.size() * sizeof(cd)) || in.peek() != EOF)
    fail(ErrorCode::IOError, path + ": size does not match the declared shape");
  return r;
}

void save_function(const SampledFunction& f, const std::string& json_path, bool csv) {
  fs::path p(json_path);
  fs::path data = p;
  data.replace_extension(csv ? ".csv" : ".bin");
  if (csv) {
    std::ofstream out(data);
    if (!out) fail(ErrorCode::IOError, "cannot write " + data.string());
    out << std::setprecision(17);
    for (Eigen::Index k = 0; k < f.values.size(); ++k) out << f.values[k].real() << "," << f.values[k].imag() << "\n";
  } else {
    write_matrix(data.string(), f.values.transpose());
  }
  json j = {{"grid", grid_json(f.grid)},
            {"space", space_name(f.tag)},
            {"format", csv ? "csv" : "complex128-le"},
            {"layout", "row-major, axis 0 slowest"},
            {"data", data.filename().string()}};
  write_text(json_path, j.dump(2) + "\n");
}

SampledFunction load_function(const std::string& json_path) {
  json j = load_json(json_path);
  try {
    GridSpec g = grid_from(j.at("grid"));
    fs::path data = fs::path(json_path).parent_path() / j.at("data").get<std::string>();
    Eigen::VectorXcd v(g.size());
    if (j.at("format") == "csv") {
      std::ifstream in(data);
      if (!in) fail(ErrorCode::IOError, "cannot read " + data.string());
      std::string line;
      Eigen::Index k = 0;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (k >= v.size()) fail(ErrorCode::IOError, data.string() + ": too many values");
        auto c = line.find(',');
        v[k++] = cd(std::stod(line.substr(0, c)), c == std::string::npos ? 0.0 : std::stod(line.substr(c + 1)));
      }
      if (k != v.size()) fail(ErrorCode::IOError, data.string() + ": too few values");
    } else {
      v = read_matrix(data.string(), 1, g.size()).transpose();
    }
    return SampledFunction(g, v, parse_space(j.at("space").get<std::string>()));
  } catch (const json::exception& e) {
    fail(ErrorCode::IOError, json_path + ": " + e.what());
  }
}

std::string lambda_grid_to_json(const LambdaGrid& g) { return lambda_json(g).dump(2); }

LambdaGrid lambda_grid_from_json(const std::string& text) {
  try {
    return lambda_from(json::parse(text));
  } catch (const json::exception& e) {
    fail(ErrorCode::IOError, std::string("lambda grid: ") + e.what());
  }
}

void save_family(const std::string& dir, const FourierFamily& fam, const QuantSpec& q) {
  fs::create_directories(dir);
  const auto& o = q.rep.orbit;
  std::vector<std::string> ell;
  for (Eigen::Index i = 0; i < o.ell.size(); ++i) ell.push_back(o.ell[i].get_str());
  json files = json::array();
  for (size_t m = 0; m < fam.ops.size(); ++m) {
    write_matrix((fs::path(dir) / node_file(m)).string(), fam.ops[m]);
    files.push_back(node_file(m));
  }
  json j = {{"kind", "fourier_family"},
            {"dtype", "complex128"},
            {"byte_order", "little"},
            {"layout", "row-major"},
            {"matrix_size", q.rep.M()},
            {"rep_grid", grid_json(q.rep.rep_grid)},
            {"lambda_grid", lambda_json(fam.lambda_grid)},
            {"orbit",
             {{"ell", ell}, {"jumps", o.jumps}, {"pf", o.pf.get_str()}, {"kappa", o.kappa.get_str()}, {"Q", o.Q.get_str()}}},
            {"c_nu", q.c_nu ? json(*q.c_nu) : json(nullptr)},
            {"files", files}};
  write_text((fs::path(dir) / "manifest.json").string(), j.dump(2) + "\n");
}

FourierFamily load_family(const std::string& dir, GridSpec* rep_grid) {
  json j = load_json((fs::path(dir) / "manifest.json").string());
  try {
    if (j.at("kind") != "fourier_family") fail(ErrorCode::IOError, dir + " is not a Fourier family");
    FourierFamily fam{lambda_from(j.at("lambda_grid")), {}};
    const Eigen::Index M = j.at("matrix_size").get<Eigen::Index>();
    if (rep_grid) *rep_grid = grid_from(j.at("rep_grid"));
    for (const auto& f : j.at("files")) fam.ops.push_back(read_matrix((fs::path(dir) / f.get<std::string>()).string(), M, M));
    if (Eigen::Index(fam.ops.size()) != fam.lambda_grid.size())
      fail(ErrorCode::IOError, dir + ": operator count does not match the lambda grid");
    return fam;
  } catch (const json::exception& e) {
    fail(ErrorCode::IOError, dir + ": " + e.what());
  }
}

void save_symbol(const std::string& dir, const SymbolField& a, const GridSpec& rep_grid) {
  fs::create_directories(dir);
  json files = json::array();
  for (size_t k = 0; k < a.a.size(); ++k) {
    json row = json::array();
    for (size_t m = 0; m < a.a[k].size(); ++m) {
      std::ostringstream os;
      os << "x_" << std::setw(3) << std::setfill('0') << k << "_" << node_file(m);
      write_matrix((fs::path(dir) / os.str()).string(), a.a[k][m]);
      row.push_back(os.str());
    }
    files.push_back(row);
  }
  json j = {{"kind", "symbol_field"},
            {"dtype", "complex128"},
            {"byte_order", "little"},
            {"layout", "row-major"},
            {"matrix_size", rep_grid.size()},
            {"rep_grid", grid_json(rep_grid)},
            {"x_grid", grid_json(a.x_grid)},
            {"lambda_grid", lambda_json(a.lambda_grid)},
            {"files", files}};
  write_text((fs::path(dir) / "manifest.json").string(), j.dump(2) + "\n");
}

SymbolField load_symbol(const std::string& dir, GridSpec* rep_grid) {
  json j = load_json((fs::path(dir) / "manifest.json").string());
  try {
    if (j.at("kind") != "symbol_field") fail(ErrorCode::IOError, dir + " is not a symbol field");
    SymbolField a{grid_from(j.at("x_grid")), lambda_from(j.at("lambda_grid")), {}};
    const Eigen::Index M = j.at("matrix_size").get<Eigen::Index>();
    if (rep_grid) *rep_grid = grid_from(j.at("rep_grid"));
    const auto& files = j.at("files");
    if (Eigen::Index(files.size()) != a.x_grid.size()) fail(ErrorCode::IOError, dir + ": x-grid count mismatch");
    for (const auto& row : files) {
      if (Eigen::Index(row.size()) != a.lambda_grid.size()) fail(ErrorCode::IOError, dir + ": lambda count mismatch");
      std::vector<Eigen::MatrixXcd> ops;
      for (const auto& f : row) ops.push_back(read_matrix((fs::path(dir) / f.get<std::string>()).string(), M, M));
      a.a.push_back(std::move(ops));
    }
    return a;
  } catch (const json::exception& e) {
    fail(ErrorCode::IOError, dir + ": " + e.what());
  }
}

}  // namespace nilharm
