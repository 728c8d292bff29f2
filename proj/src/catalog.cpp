#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fields_catalog_text.hpp"
#include "latdiv/numberfield.hpp"

namespace latdiv {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(s));
  return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

}  // namespace

FieldCatalog FieldCatalog::parse(const std::string& text) {
  FieldCatalog cat;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    lineno++;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto parts = split(line, '|');
    if (parts.size() != 5)
      throw std::runtime_error("field catalog line " + std::to_string(lineno) + ": expected 5 fields");
    Record rec;
    rec.tag = parts[0];
    for (const auto& c : split(parts[1], ',')) rec.min_poly.coeffs.push_back(std::stoll(c));
    for (const auto& row : split(parts[2], ';')) {
      RatRow r;
      for (const auto& entry : split(row, ',')) r.push_back(parse_rat(entry));
      rec.basis.push_back(std::move(r));
    }
    rec.disc = std::stoll(parts[3]);
    auto sig = split(parts[4], ',');
    if (sig.size() != 2)
      throw std::runtime_error("field catalog line " + std::to_string(lineno) + ": bad signature");
    rec.r1 = std::stoi(sig[0]);
    rec.r2 = std::stoi(sig[1]);
    int n = rec.min_poly.degree();
    if (int(rec.basis.size()) != n)
      throw std::runtime_error("field catalog line " + std::to_string(lineno) + ": basis row count");
    for (const auto& r : rec.basis)
      if (int(r.size()) != n)
        throw std::runtime_error("field catalog line " + std::to_string(lineno) + ": basis row length");
    cat.records_.push_back(std::move(rec));
  }
  return cat;
}

FieldCatalog FieldCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field catalog " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const FieldCatalog& FieldCatalog::builtin() {
  static const FieldCatalog cat = parse(detail::kBuiltinCatalogText);
  return cat;
}

const FieldCatalog::Record* FieldCatalog::find(const std::string& tag) const {
  for (const auto& r : records_)
    if (r.tag == tag) return &r;
  return nullptr;
}

}  // namespace latdiv
