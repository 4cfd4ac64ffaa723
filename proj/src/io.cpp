#include "tridiag/io.hpp"

#include <sstream>

namespace tridiag::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real_part(const std::string& s) {
  if (s.empty() || s == "+") return 1.0;   // bare "i" / "+i"
  if (s == "-") return -1.0;               // "-i"
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw Error("malformed complex literal part: " + s);
  return v;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw Error("empty complex literal");
  // split into at most two signed parts; signs following e/E are exponents
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') &&
        !(s[i - 1] == 'e' || s[i - 1] == 'E'))
      split = i;  // keep the last one: "1e-3-2e-4i" splits at the middle '-'
  }
  auto part = [&](const std::string& p, double& re, double& im) {
    if (!p.empty() && (p.back() == 'i' || p.back() == 'I'))
      im += parse_real_part(p.substr(0, p.size() - 1));
    else
      re += parse_real_part(p);
  };
  double re = 0.0, im = 0.0;
  if (split == std::string::npos) {
    part(s, re, im);
  } else {
    part(s.substr(0, split), re, im);
    part(s.substr(split), re, im);
  }
  return Complex(re, im);
}

std::string format_complex(Complex z) {
  double re = z.real() == 0.0 ? 0.0 : z.real();  // normalize -0
  double im = z.imag() == 0.0 ? 0.0 : z.imag();
  std::ostringstream os;
  os.precision(17);
  os << re;
  if (im >= 0.0) os << "+";
  os << im << "i";
  return os.str();
}

nlohmann::ordered_json spectrum_to_json(const SpectrumResult& res,
                                        double wall_time_ms) {
  nlohmann::ordered_json j;
  j["schema"] = "tridiag/1";
  j["n"] = res.n_input;
  j["n_canonical"] = res.n;
  j["Q"] = res.Q;
  j["w"] = res.w;
  nlohmann::ordered_json eigs = nlohmann::ordered_json::array();
  for (const Eigenpair& e : res.eigenpairs) {
    nlohmann::ordered_json je;
    je["re"] = e.lambda.real();
    je["im"] = e.lambda.imag();
    je["kind"] = to_string(e.kind);
    if (e.kind == EigKind::regular) je["t"] = e.t;
    if (e.residual >= 0.0) je["residual"] = e.residual;
    eigs.push_back(std::move(je));
  }
  j["eigenvalues"] = std::move(eigs);
  nlohmann::ordered_json diag;
  diag["warnings"] = res.diagnostics.warnings;
  nlohmann::ordered_json det = nlohmann::ordered_json::array();
  for (const Complex& d : res.diagnostics.detached)
    det.push_back({{"re", d.real()}, {"im", d.imag()}});
  diag["detached"] = std::move(det);
  diag["iterations"] = {{"max", res.diagnostics.max_refine_iterations},
                        {"mean", res.diagnostics.mean_refine_iterations}};
  j["diagnostics"] = std::move(diag);
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

SpectrumResult spectrum_from_json(const nlohmann::ordered_json& j) {
  if (j.at("schema").get<std::string>() != "tridiag/1")
    throw Error("unknown schema");
  SpectrumResult res;
  res.n_input = j.at("n").get<int>();
  res.n = j.at("n_canonical").get<int>();
  res.Q = j.at("Q").get<int>();
  res.w = j.at("w").get<int>();
  for (const auto& je : j.at("eigenvalues")) {
    Eigenpair e;
    e.lambda = Complex(je.at("re").get<double>(), je.at("im").get<double>());
    std::string kind = je.at("kind").get<std::string>();
    if (kind == "regular")
      e.kind = EigKind::regular;
    else if (kind == "special")
      e.kind = EigKind::special;
    else if (kind == "pm2")
      e.kind = EigKind::pm2;
    else if (kind == "detached")
      e.kind = EigKind::detached;
    else
      throw Error("unknown eigenvalue kind: " + kind);
    if (je.contains("t")) e.t = je.at("t").get<double>();
    if (je.contains("residual")) e.residual = je.at("residual").get<double>();
    res.eigenpairs.push_back(std::move(e));
  }
  const auto& diag = j.at("diagnostics");
  res.diagnostics.warnings =
      diag.at("warnings").get<std::vector<std::string>>();
  for (const auto& jd : diag.at("detached"))
    res.diagnostics.detached.push_back(
        Complex(jd.at("re").get<double>(), jd.at("im").get<double>()));
  res.diagnostics.max_refine_iterations =
      diag.at("iterations").at("max").get<int>();
  res.diagnostics.mean_refine_iterations =
      diag.at("iterations").at("mean").get<double>();
  return res;
}

std::string spectrum_to_csv(const SpectrumResult& res) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,kind,t,residual\n";
  for (const Eigenpair& e : res.eigenpairs) {
    os << e.lambda.real() << "," << e.lambda.imag() << "," << to_string(e.kind)
       << ",";
    if (e.kind == EigKind::regular) os << e.t;
    os << ",";
    if (e.residual >= 0.0) os << e.residual;
    os << "\n";
  }
  return os.str();
}

std::map<std::string, std::string> load_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error("config line with empty key");
    out[key] = value;
  }
  return out;
}

}  // namespace tridiag::io
