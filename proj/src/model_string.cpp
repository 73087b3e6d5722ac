#include "coarma/model_string.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarma/errors.hpp"

namespace coarma {

namespace {

struct PairCode {
  Family family;
  Rotation rotation;
};

PairCode pair_code(const std::string& code, std::size_t pos) {
  std::string name = code;
  Rotation rot = Rotation::None;
  if (name.size() > 3 && name.substr(name.size() - 3) == "180") {
    rot = Rotation::R180;
    name = name.substr(0, name.size() - 3);
  }
  if (name == "i" || name == "independence") return {Family::Independence, rot};
  if (name == "m" || name == "comonotone") return {Family::Comonotone, rot};
  if (name == "n" || name == "normal" || name == "gaussian") return {Family::Gaussian, rot};
  if (name == "t" || name == "studentt") return {Family::StudentT, rot};
  if (name == "c" || name == "clayton") return {Family::Clayton, rot};
  if (name == "g" || name == "gumbel") return {Family::Gumbel, rot};
  if (name == "f" || name == "frank") return {Family::Frank, rot};
  if (name == "frechet") return {Family::Frechet, rot};
  throw parse_error("unknown pair code '" + code + "'", pos);
}

std::string code_of(Family f) {
  switch (f) {
    case Family::Independence: return "i";
    case Family::Comonotone: return "m";
    case Family::Gaussian: return "n";
    case Family::StudentT: return "t";
    case Family::Clayton: return "c";
    case Family::Gumbel: return "g";
    case Family::Frank: return "f";
    case Family::Frechet: return "frechet";
  }
  return "?";
}

std::size_t param_count(Family f) {
  switch (f) {
    case Family::Independence:
    case Family::Comonotone:
      return 0;
    case Family::StudentT:
      return 2;
    default:
      return 1;
  }
}

double start_value(Family f, int param_index) {
  switch (f) {
    case Family::Gaussian: return 0.2;
    case Family::StudentT: return param_index == 0 ? 0.2 : 8.0;
    case Family::Clayton: return 0.5;
    case Family::Gumbel: return 1.2;
    case Family::Frank: return 1.0;
    case Family::Frechet: return 0.3;
    default: return 0.0;
  }
}

// Splits "n:?,g:2.0,t:?,4" into pair tokens respecting parameter commas.
std::vector<std::string> split_pair_tokens(const std::string& body, std::size_t base_pos) {
  std::vector<std::string> out;
  if (body.empty()) return out;
  std::size_t start = 0;
  int params_started = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    const bool end = i == body.size();
    const char ch = end ? ',' : body[i];
    if (!end && ch == ':') params_started = 1;
    if (ch == ',') {
      const char nxt = (i + 1 < body.size()) ? body[i + 1] : '\0';
      const bool numeric = (nxt >= '0' && nxt <= '9') || nxt == '-' || nxt == '+' ||
                           nxt == '.' || nxt == '?';
      if (end || !(params_started && numeric)) {
        if (i == start) throw parse_error("empty pair token", base_pos + start);
        out.push_back(body.substr(start, i - start));
        start = i + 1;
        params_started = 0;
      }
    }
  }
  return out;
}

struct ParsedPair {
  CopulaSpec spec;
  std::vector<int> free_indices;
};

ParsedPair parse_pair(const std::string& tok, std::size_t pos) {
  std::string code = tok;
  std::string params_text;
  if (const auto colon = tok.find(':'); colon != std::string::npos) {
    code = tok.substr(0, colon);
    params_text = tok.substr(colon + 1);
  }
  const PairCode pc = pair_code(code, pos);
  const std::size_t np = param_count(pc.family);

  ParsedPair out;
  out.spec.family = pc.family;
  out.spec.rotation = pc.rotation;
  if (params_text.empty()) {
    // Bare code: every parameter free, as in the study naming scheme.
    for (std::size_t i = 0; i < np; ++i) {
      out.spec.params.push_back(start_value(pc.family, static_cast<int>(i)));
      out.free_indices.push_back(static_cast<int>(i));
    }
  } else {
    std::stringstream ss(params_text);
    std::string piece;
    int idx = 0;
    while (std::getline(ss, piece, ',')) {
      if (piece == "?") {
        out.spec.params.push_back(start_value(pc.family, idx));
        out.free_indices.push_back(idx);
      } else {
        try {
          std::size_t used = 0;
          out.spec.params.push_back(std::stod(piece, &used));
          if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
          throw parse_error("bad parameter '" + piece + "'", pos);
        }
      }
      ++idx;
    }
    if (out.spec.params.size() != np)
      throw parse_error("family '" + code + "' takes " + std::to_string(np) +
                            " parameter(s)",
                        pos);
  }
  out.spec.validate();
  return out;
}

// Extracts "(...)" starting at text[pos]; returns body and advances pos.
std::string take_group(const std::string& text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != '(')
    throw parse_error("expected '('", pos);
  const auto close = text.find(')', pos);
  if (close == std::string::npos) throw parse_error("missing ')'", pos);
  std::string body = text.substr(pos + 1, close - pos - 1);
  pos = close + 1;
  return body;
}

}  // namespace

ParsedModel parse_model_string(const std::string& text) {
  ParsedModel model;
  const auto dash = text.find('-');
  if (dash == std::string::npos) throw parse_error("model string needs '<margin>-...'", 0);
  model.margin = margin_kind_from_token(text.substr(0, dash));

  std::size_t pos = dash + 1;
  int p = 0, q = 0;
  bool has_mag_block = false;
  if (text.compare(pos, 7, "CoARMA(") == 0) {
    pos += 6;
    std::string orders = take_group(text, pos);
    const auto comma = orders.find(',');
    if (comma == std::string::npos) throw parse_error("CoARMA needs '(p,q)'", pos);
    p = std::stoi(orders.substr(0, comma));
    q = std::stoi(orders.substr(comma + 1));
    has_mag_block = true;
  } else if (text.compare(pos, 3, "AR(") == 0) {
    pos += 2;
    p = std::stoi(take_group(text, pos));
    q = 0;
  } else if (text.compare(pos, 4, "MAG(") == 0) {
    pos += 3;
    q = std::stoi(take_group(text, pos));
    p = 0;
    has_mag_block = true;
  } else {
    throw parse_error("expected 'CoARMA(', 'AR(' or 'MAG('", pos);
  }
  if (p < 0 || q < 0) throw parse_error("negative model order", pos);

  std::vector<CopulaSpec> ar_pairs, mag_pairs;
  const auto read_block = [&](int expected, bool in_mag) {
    if (pos >= text.size() || text[pos] != '-') throw parse_error("expected '-('", pos);
    ++pos;
    const std::size_t block_pos = pos;
    const std::string body = take_group(text, pos);
    const auto toks = split_pair_tokens(body, block_pos);
    if (static_cast<int>(toks.size()) != expected)
      throw parse_error("expected " + std::to_string(expected) + " pair(s), got " +
                            std::to_string(toks.size()),
                        block_pos);
    for (std::size_t i = 0; i < toks.size(); ++i) {
      ParsedPair pp = parse_pair(toks[i], block_pos);
      for (int idx : pp.free_indices)
        model.free_params.push_back({in_mag, static_cast<int>(i), idx});
      (in_mag ? mag_pairs : ar_pairs).push_back(std::move(pp.spec));
    }
  };
  if (p > 0 || !has_mag_block || text.compare(pos, 3, "-()") == 0) {
    read_block(p, false);
  }
  if (has_mag_block) {
    read_block(q, true);
  }
  if (pos != text.size()) throw parse_error("trailing characters", pos);

  model.spec = CoarmaSpec(VineSpec(VineKind::StationaryDVine, std::move(ar_pairs)),
                          VineSpec(VineKind::MagDVine, std::move(mag_pairs)));
  return model;
}

namespace {

std::string format_pair(const CopulaSpec& pair, const std::vector<int>& free_indices) {
  std::string s = code_of(pair.family);
  if (pair.rotation == Rotation::R180 &&
      (pair.family == Family::Clayton || pair.family == Family::Gumbel))
    s += "180";
  if (pair.params.empty()) return s;
  const bool all_free =
      free_indices.size() == pair.params.size();
  if (all_free) return s;  // bare code means all parameters free
  s += ":";
  for (std::size_t i = 0; i < pair.params.size(); ++i) {
    if (i) s += ",";
    if (std::find(free_indices.begin(), free_indices.end(), static_cast<int>(i)) !=
        free_indices.end()) {
      s += "?";
    } else {
      std::ostringstream os;
      os.precision(12);
      os << pair.params[i];
      s += os.str();
    }
  }
  return s;
}

}  // namespace

std::string format_model_string(const ParsedModel& model) {
  const auto free_of = [&](bool in_mag, int pair_idx) {
    std::vector<int> out;
    for (const auto& fp : model.free_params)
      if (fp.in_mag == in_mag && fp.pair_index == pair_idx) out.push_back(fp.param_index);
    return out;
  };
  std::string s = margin_token(model.margin) + "-";
  const int p = model.spec.p, q = model.spec.q;
  const bool pure_ar = q == 0;
  if (pure_ar) s += "AR(" + std::to_string(p) + ")";
  else s += "CoARMA(" + std::to_string(p) + "," + std::to_string(q) + ")";
  if (p > 0 || pure_ar) {
    s += "-(";
    for (int i = 0; i < p; ++i) {
      if (i) s += ",";
      s += format_pair(model.spec.ar.pair_copulas[static_cast<std::size_t>(i)],
                       free_of(false, i));
    }
    s += ")";
  }
  if (!pure_ar) {
    s += "-(";
    for (int i = 0; i < q; ++i) {
      if (i) s += ",";
      s += format_pair(model.spec.mag.pair_copulas[static_cast<std::size_t>(i)],
                       free_of(true, i));
    }
    s += ")";
  }
  return s;
}

}  // namespace coarma
