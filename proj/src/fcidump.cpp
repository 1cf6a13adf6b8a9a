// Copyright 2026 The qfddf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfddf/fcidump.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace qfddf {

namespace {

using Kind = FcidumpError::Kind;

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// Extracts the integer value of KEY=... from the namelist text.
bool find_int(const std::string& header, const std::string& key, long& value) {
  std::size_t pos = 0;
  while ((pos = header.find(key, pos)) != std::string::npos) {
    const bool boundary = pos == 0 || !std::isalnum(static_cast<unsigned char>(header[pos - 1]));
    std::size_t eq = pos + key.size();
    while (eq < header.size() && std::isspace(static_cast<unsigned char>(header[eq]))) ++eq;
    if (boundary && eq < header.size() && header[eq] == '=') {
      std::size_t start = eq + 1;
      while (start < header.size() && std::isspace(static_cast<unsigned char>(header[start]))) ++start;
      std::size_t end = start;
      if (end < header.size() && (header[end] == '-' || header[end] == '+')) ++end;
      while (end < header.size() && std::isdigit(static_cast<unsigned char>(header[end]))) ++end;
      if (end == start) throw FcidumpError(Kind::kMalformedHeader, "missing value for " + key);
      value = std::stol(header.substr(start, end - start));
      return true;
    }
    pos += key.size();
  }
  return false;
}

std::tuple<int, int, int, int> canonical(int p, int q, int r, int s) {
  if (p < q) std::swap(p, q);
  if (r < s) std::swap(r, s);
  if (std::make_pair(p, q) < std::make_pair(r, s)) {
    std::swap(p, r);
    std::swap(q, s);
  }
  return {p, q, r, s};
}

}  // namespace

ActiveSpaceHamiltonian parse_fcidump(std::string_view text) {
  const std::string all(text);
  const std::string up = upper(all);
  const auto begin = up.find("&FCI");
  if (begin == std::string::npos) throw FcidumpError(Kind::kMalformedHeader, "missing &FCI namelist");
  std::size_t end = up.find("&END", begin);
  std::size_t body = std::string::npos;
  if (end != std::string::npos) {
    body = end + 4;
  } else {
    end = up.find('/', begin);
    if (end == std::string::npos) throw FcidumpError(Kind::kMalformedHeader, "unterminated namelist");
    body = end + 1;
  }
  const std::string header = up.substr(begin, end - begin);

  long norb = 0, nelec = 0, ms2 = 0;
  if (!find_int(header, "NORB", norb)) throw FcidumpError(Kind::kMalformedHeader, "NORB missing");
  if (!find_int(header, "NELEC", nelec)) throw FcidumpError(Kind::kMalformedHeader, "NELEC missing");
  find_int(header, "MS2", ms2);
  if (norb < 1 || norb > 64) throw FcidumpError(Kind::kMalformedHeader, "NORB out of range");
  if (nelec < 0 || (nelec + ms2) % 2 != 0 || std::abs(ms2) > nelec) {
    throw FcidumpError(Kind::kMalformedHeader, "inconsistent NELEC/MS2");
  }
  const long na = (nelec + ms2) / 2;
  const long nb = (nelec - ms2) / 2;
  if (na > norb || nb > norb) throw FcidumpError(Kind::kMalformedHeader, "more electrons than orbitals");

  ActiveSpaceHamiltonian ham;
  const int n = static_cast<int>(norb);
  ham.n_orbitals = n;
  ham.n_alpha = static_cast<int>(na);
  ham.n_beta = static_cast<int>(nb);
  ham.one_body = Matrix::Zero(n, n);
  ham.eri = Tensor4(n);

  constexpr double kConflictTol = 1e-10;
  std::map<std::tuple<int, int, int, int>, double> seen_eri;
  std::map<std::pair<int, int>, double> seen_h;
  bool seen_core = false;

  std::istringstream in(all.substr(body));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string value_token;
    if (!(ls >> value_token)) continue;
    // Fortran writers occasionally emit D exponents.
    for (auto& c : value_token) {
      if (c == 'D' || c == 'd') c = 'e';
    }
    double value = 0.0;
    long idx[4];
    try {
      std::size_t used = 0;
      value = std::stod(value_token, &used);
      if (used != value_token.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw FcidumpError(Kind::kMalformedRecord, "bad value on record " + std::to_string(line_no));
    }
    for (long& i : idx) {
      if (!(ls >> i)) throw FcidumpError(Kind::kMalformedRecord, "bad indices on record " + std::to_string(line_no));
    }
    std::string extra;
    if (ls >> extra) throw FcidumpError(Kind::kMalformedRecord, "trailing data on record " + std::to_string(line_no));
    for (long i : idx) {
      if (i < 0 || i > norb) {
        throw FcidumpError(Kind::kIndexOutOfRange, "index out of range on record " + std::to_string(line_no));
      }
    }
    const int p = static_cast<int>(idx[0]) - 1, q = static_cast<int>(idx[1]) - 1;
    const int r = static_cast<int>(idx[2]) - 1, s = static_cast<int>(idx[3]) - 1;
    const int zeros = (idx[0] == 0) + (idx[1] == 0) + (idx[2] == 0) + (idx[3] == 0);

    if (zeros == 0) {
      const auto key = canonical(p, q, r, s);
      auto [it, inserted] = seen_eri.emplace(key, value);
      if (!inserted) {
        if (std::abs(it->second - value) > kConflictTol) {
          throw FcidumpError(Kind::kConflictingDuplicate,
                             "conflicting duplicate ERI record on line " + std::to_string(line_no));
        }
        continue;
      }
      ham.eri.set_symmetric(p, q, r, s, value);
    } else if (idx[0] != 0 && idx[1] != 0 && idx[2] == 0 && idx[3] == 0) {
      const auto key = std::make_pair(std::max(p, q), std::min(p, q));
      auto [it, inserted] = seen_h.emplace(key, value);
      if (!inserted) {
        if (std::abs(it->second - value) > kConflictTol) {
          throw FcidumpError(Kind::kConflictingDuplicate,
                             "conflicting duplicate one-body record on line " + std::to_string(line_no));
        }
        continue;
      }
      ham.one_body(p, q) = value;
      ham.one_body(q, p) = value;
    } else if (zeros == 4) {
      if (seen_core && std::abs(ham.e_ext - value) > kConflictTol) {
        throw FcidumpError(Kind::kConflictingDuplicate, "conflicting core energy records");
      }
      seen_core = true;
      ham.e_ext = value;
    } else if (idx[0] != 0 && zeros == 3) {
      // orbital energy record
    } else {
      throw FcidumpError(Kind::kMalformedRecord, "unrecognized index pattern on record " + std::to_string(line_no));
    }
  }
  return ham;
}

ActiveSpaceHamiltonian read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_fcidump(buffer.str());
}

std::string serialize_fcidump(const ActiveSpaceHamiltonian& ham) {
  const int n = ham.n_orbitals;
  std::ostringstream out;
  out << " &FCI NORB=" << n << ",NELEC=" << (ham.n_alpha + ham.n_beta)
      << ",MS2=" << (ham.n_alpha - ham.n_beta) << ",\n  ORBSYM=";
  for (int i = 0; i < n; ++i) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  char buf[96];
  auto emit = [&](double v, int a, int b, int c, int d) {
    std::snprintf(buf, sizeof(buf), "%24.17e %4d %4d %4d %4d\n", v, a, b, c, d);
    out << buf;
  };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (p * n + q < r * n + s) continue;
          const double v = ham.eri(p, q, r, s);
          if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      const double v = ham.one_body(p, q);
      if (v != 0.0) emit(v, p + 1, q + 1, 0, 0);
    }
  emit(ham.e_ext, 0, 0, 0, 0);
  return out.str();
}

}  // namespace qfddf
