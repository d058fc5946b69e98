#include "avoid/dzn_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace avoid {

namespace {

int factorial(int n) {
  int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<int> identity_map(int sigma) {
  std::vector<int> t(sigma);
  std::iota(t.begin(), t.end(), 1);  // 1-based letter maps, as written
  return t;
}

// permutation_rows content implied by the tuple rows: row z of pattern p
// applies the z-th permutation, raised to each position's power, at every
// function-governed position, and the identity elsewhere.
std::vector<std::vector<std::vector<int>>> derive_permutation_rows(
    const std::vector<std::vector<std::array<int, 4>>>& rows, int sigma) {
  std::vector<std::vector<int>> perms = all_letter_permutations(sigma);
  std::vector<std::vector<std::vector<int>>> out;
  for (const auto& row : rows) {
    for (const std::vector<int>& perm : perms) {
      std::vector<std::vector<int>> maps;
      maps.reserve(row.size());
      for (const std::array<int, 4>& tuple : row) {
        const int power = tuple[1];
        const int var = tuple[2];
        if (var == 0 || power == 0) {
          maps.push_back(identity_map(sigma));
          continue;
        }
        std::vector<int> t(sigma);
        std::iota(t.begin(), t.end(), 0);
        for (int i = 0; i < power; ++i)
          for (int x = 0; x < sigma; ++x)
            t[x] = perm[t[x]];
        for (int& v : t) ++v;
        maps.push_back(std::move(t));
      }
      out.push_back(std::move(maps));
    }
  }
  return out;
}

void validate(const DataFileSpec& spec) {
  if (spec.sigma < 1) throw std::invalid_argument("sigma must be >= 1");
  if (spec.word_length < 1) throw std::invalid_argument("wordLength must be >= 1");

  auto check_counters = [](size_t nr_patterns, const std::vector<int>& counters,
                           const char* name) {
    if (counters.size() != nr_patterns)
      throw std::invalid_argument(std::string(name) + " must have one entry per pattern");
  };

  if (const auto* t = std::get_if<SignedPatternTable>(&spec.table)) {
    if (t->rows.empty()) throw std::invalid_argument("formulas are non-empty: nrPatterns >= 1");
    check_counters(t->rows.size(), t->nr_vars_in_pattern, "nrVarsInPattern");
    if (t->max_pattern_length < 1) throw std::invalid_argument("maxPatternLength must be >= 1");
    int max_vars = 0;
    for (size_t p = 0; p < t->rows.size(); ++p) {
      const auto& row = t->rows[p];
      if (static_cast<int>(row.size()) != t->max_pattern_length)
        throw std::invalid_argument("patterns rows must all have maxPatternLength entries");
      const int nv = t->nr_vars_in_pattern[p];
      int seen = 0;
      bool in_padding = false;
      for (int v : row) {
        if (v == 0) {
          in_padding = true;
          continue;
        }
        if (in_padding) throw std::invalid_argument("pattern padding must be trailing");
        const int var = std::abs(v);
        if (var > seen + 1)
          throw std::invalid_argument("pattern variables must be numbered by first occurrence");
        seen = std::max(seen, var);
      }
      if (seen == 0) throw std::invalid_argument("patterns must be non-empty");
      if (seen != nv) throw std::invalid_argument("nrVarsInPattern entry does not match its row");
      max_vars = std::max(max_vars, nv);
    }
    if (t->max_nr_vars != max_vars)
      throw std::invalid_argument("maxNrVars does not match the pattern rows");
  } else {
    const auto& tt = std::get<TuplePatternTable>(spec.table);
    if (tt.rows.empty()) throw std::invalid_argument("formulas are non-empty: nrPatterns >= 1");
    check_counters(tt.rows.size(), tt.nr_vars_in_pattern, "nrVarsInPattern");
    check_counters(tt.rows.size(), tt.nr_perms_in_pattern, "nrPermsInPattern");
    if (tt.max_nr_occs < 1) throw std::invalid_argument("maxNrOccs must be >= 1");
    if (tt.nr_permutations != factorial(spec.sigma))
      throw std::invalid_argument("nrPermutations must equal sigma!");
    int max_vars = 0;
    for (size_t p = 0; p < tt.rows.size(); ++p) {
      const auto& row = tt.rows[p];
      if (static_cast<int>(row.size()) != tt.max_nr_occs)
        throw std::invalid_argument("repetitions rows must all have maxNrOccs tuples");
      int vars_seen = 0;
      int perms_seen = 0;
      bool in_padding = false;
      for (const std::array<int, 4>& tuple : row) {
        const auto [perm, power, var, rev] = tuple;
        if (var == 0) {
          if (perm != 0 || power != 0 || rev != 0)
            throw std::invalid_argument("padding tuples must be all zero");
          in_padding = true;
          continue;
        }
        if (in_padding) throw std::invalid_argument("pattern padding must be trailing");
        if (rev != 0 && rev != 1) throw std::invalid_argument("reversal flag must be 0 or 1");
        if (power < 0 || perm < 1 || var < 1)
          throw std::invalid_argument("tuple entries out of range");
        if (power == 0 && perm != 1)
          throw std::invalid_argument("power-0 tuples must carry function index 1");
        if (var > vars_seen + 1)
          throw std::invalid_argument("pattern variables must be numbered by first occurrence");
        vars_seen = std::max(vars_seen, var);
        if (power > 0) {
          if (perm > perms_seen + 1)
            throw std::invalid_argument("function variables must be numbered by first occurrence");
          perms_seen = std::max(perms_seen, perm);
        }
      }
      if (vars_seen == 0) throw std::invalid_argument("patterns must be non-empty");
      if (vars_seen != tt.nr_vars_in_pattern[p])
        throw std::invalid_argument("nrVarsInPattern entry does not match its row");
      if (perms_seen != tt.nr_perms_in_pattern[p])
        throw std::invalid_argument("nrPermsInPattern entry does not match its row");
      max_vars = std::max(max_vars, vars_seen);
    }
    if (tt.max_nr_vars != max_vars)
      throw std::invalid_argument("maxNrVars does not match the pattern rows");
    if (tt.permutation_rows != derive_permutation_rows(tt.rows, spec.sigma))
      throw std::invalid_argument("permutations table is inconsistent with the patterns");
  }

  if (spec.morphic) {
    const MorphicBlock& m = *spec.morphic;
    if (m.morphic_word.empty()) throw std::invalid_argument("morphicWord must be non-empty");
    if (m.image_lengths.empty())
      throw std::invalid_argument("morphicWordImagesLengths must be non-empty");
    for (int len : m.image_lengths)
      if (len < 1) throw std::invalid_argument("image lengths must be >= 1");
    for (int a : m.morphic_word)
      if (a < 0 || a >= static_cast<int>(m.image_lengths.size()))
        throw std::invalid_argument("morphicWord letter outside the image range");
    const int total = std::accumulate(m.image_lengths.begin(), m.image_lengths.end(), 0);
    if (spec.word_length != total)
      throw std::invalid_argument("wordLength must equal the sum of the image lengths");
  }
}

}  // namespace

DataFileSpec make_data_file_spec(int sigma, int word_length, const Formula& f,
                                 std::optional<MorphicBlock> morphic) {
  DataFileSpec spec;
  spec.sigma = sigma;
  spec.word_length = word_length;
  spec.morphic = std::move(morphic);
  if (f.semantics() == Semantics::UnderPermutations) {
    TuplePatternTable t;
    t.rows = padded_tuple_rows(f);
    for (const Pattern& p : f.patterns()) {
      t.nr_vars_in_pattern.push_back(p.nr_vars());
      t.nr_perms_in_pattern.push_back(p.nr_perms());
    }
    t.max_nr_occs = f.max_pattern_length();
    t.max_nr_vars = f.max_nr_vars();
    t.nr_permutations = factorial(sigma);
    t.permutation_rows = derive_permutation_rows(t.rows, sigma);
    spec.table = std::move(t);
  } else {
    SignedPatternTable t;
    t.rows = padded_signed_rows(f);
    for (const Pattern& p : f.patterns()) t.nr_vars_in_pattern.push_back(p.nr_vars());
    t.max_pattern_length = f.max_pattern_length();
    t.max_nr_vars = f.max_nr_vars();
    spec.table = std::move(t);
  }
  validate(spec);
  return spec;
}

namespace {

void emit_scalar(std::ostringstream& os, const char* name, int value) {
  os << name << " = " << value << ";\n";
}

void emit_array1d(std::ostringstream& os, const char* name, const char* index,
                  const std::vector<int>& values) {
  os << name << " = array1d(1.." << index << ", [  ";
  for (int v : values) os << v << ", ";
  os << "]);\n";
}

}  // namespace

std::string write_data_file(const DataFileSpec& spec) {
  validate(spec);
  std::ostringstream os;
  emit_scalar(os, "sigma", spec.sigma);
  emit_scalar(os, "wordLength", spec.word_length);

  if (const auto* t = std::get_if<SignedPatternTable>(&spec.table)) {
    emit_scalar(os, "nrPatterns", static_cast<int>(t->rows.size()));
    emit_scalar(os, "maxPatternLength", t->max_pattern_length);
    emit_scalar(os, "maxNrVars", t->max_nr_vars);
    os << "patterns = array2d(1..nrPatterns, 1..maxPatternLength, [\n";
    for (const auto& row : t->rows) {
      os << "  ";
      for (size_t i = 0; i < row.size(); ++i) {
        os << row[i] << ',';
        if (i + 1 < row.size()) os << ' ';
      }
      os << "\n";
    }
    os << "]);\n";
    emit_array1d(os, "nrVarsInPattern", "nrPatterns", t->nr_vars_in_pattern);
  } else {
    const auto& tt = std::get<TuplePatternTable>(spec.table);
    emit_scalar(os, "nrPatterns", static_cast<int>(tt.rows.size()));
    emit_scalar(os, "maxNrOccs", tt.max_nr_occs);
    emit_scalar(os, "maxNrVars", tt.max_nr_vars);
    emit_scalar(os, "nrPermutations", tt.nr_permutations);
    os << "repetitions = array3d(1..nrPatterns, 1..maxNrOccs, 1..4, [\n";
    for (const auto& row : tt.rows) {
      os << "  ";
      for (size_t i = 0; i < row.size(); ++i) {
        const auto& tuple = row[i];
        os << tuple[0] << ',' << tuple[1] << ',' << tuple[2] << ',' << tuple[3] << ',';
        if (i + 1 < row.size()) os << "    ";
      }
      os << "\n";
    }
    os << "]);\n";
    emit_array1d(os, "nrVarsInPattern", "nrPatterns", tt.nr_vars_in_pattern);
    emit_array1d(os, "nrPermsInPattern", "nrPatterns", tt.nr_perms_in_pattern);
    os << "permutations = array4d(1..nrPatterns, 1..nrPermutations, 1..maxNrOccs, 1..sigma, [\n";
    for (const auto& row : tt.permutation_rows) {
      os << "  ";
      for (size_t i = 0; i < row.size(); ++i) {
        os << '(';
        for (size_t j = 0; j < row[i].size(); ++j) {
          if (j > 0) os << ',';
          os << row[i][j];
        }
        os << "),";
        if (i + 1 < row.size()) os << "  ";
      }
      os << "\n";
    }
    os << "]);\n";
  }

  if (spec.morphic) {
    const MorphicBlock& m = *spec.morphic;
    emit_scalar(os, "morphicWordLength", static_cast<int>(m.morphic_word.size()));
    emit_array1d(os, "morphicWord", "morphicWordLength", m.morphic_word);
    emit_scalar(os, "numberOfMorphicWordImages", static_cast<int>(m.image_lengths.size()));
    emit_array1d(os, "morphicWordImagesLengths", "numberOfMorphicWordImages", m.image_lengths);
  }
  return os.str();
}

namespace {

struct Statement {
  std::string name;
  std::string value;
  int line;
};

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  int line = 1;
  int stmt_line = 1;
  std::string current;
  bool fresh = true;
  for (char c : text) {
    if (c == '\n') ++line;
    if (fresh && !std::isspace(static_cast<unsigned char>(c))) {
      stmt_line = line;
      fresh = false;
    }
    if (c == ';') {
      size_t eq = current.find('=');
      if (eq == std::string::npos) throw DznError("expected 'name = value'", stmt_line);
      auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r\n");
        size_t b = s.find_last_not_of(" \t\r\n");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      Statement st{trim(current.substr(0, eq)), trim(current.substr(eq + 1)), stmt_line};
      if (st.name.empty()) throw DznError("missing field name", stmt_line);
      out.push_back(std::move(st));
      current.clear();
      fresh = true;
    } else {
      current += c;
    }
  }
  std::string rest = current;
  if (rest.find_first_not_of(" \t\r\n") != std::string::npos)
    throw DznError("trailing content without ';'", line);
  return out;
}

struct ArrayValue {
  std::vector<std::string> dims;  // index-set upper bounds, literal or name
  std::vector<int> flat;
};

bool parse_int(const std::string& s, int* out) {
  if (s.empty()) return false;
  size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000'000) return false;
  }
  *out = s[0] == '-' ? static_cast<int>(-v) : static_cast<int>(v);
  return true;
}

ArrayValue parse_array(const std::string& value, int line) {
  ArrayValue av;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < value.size() && std::isspace(static_cast<unsigned char>(value[i]))) ++i;
  };
  if (value.compare(0, 5, "array") != 0) throw DznError("expected an array value", line);
  i = 5;
  if (i >= value.size() || !std::isdigit(static_cast<unsigned char>(value[i])))
    throw DznError("expected array dimension count", line);
  const int ndims = value[i] - '0';
  ++i;
  if (i + 1 >= value.size() || value[i] != 'd' || value[i + 1] != '(')
    throw DznError("expected 'd(' in array value", line);
  i += 2;
  for (int d = 0; d < ndims; ++d) {
    skip_ws();
    if (value.compare(i, 3, "1..") != 0) throw DznError("expected index set '1..n'", line);
    i += 3;
    std::string bound;
    while (i < value.size() && (std::isalnum(static_cast<unsigned char>(value[i])) ||
                                value[i] == '_'))
      bound += value[i++];
    if (bound.empty()) throw DznError("expected index bound", line);
    av.dims.push_back(bound);
    skip_ws();
    if (i >= value.size() || value[i] != ',') throw DznError("expected ',' after index set", line);
    ++i;
  }
  skip_ws();
  if (i >= value.size() || value[i] != '[') throw DznError("expected '[' in array value", line);
  ++i;
  for (;;) {
    skip_ws();
    if (i >= value.size()) throw DznError("unterminated array literal", line);
    const char c = value[i];
    if (c == ']') {
      ++i;
      break;
    }
    if (c == ',' || c == '(' || c == ')') {
      ++i;
      continue;
    }
    std::string tok;
    if (c == '-') tok += value[i++];
    while (i < value.size() && std::isdigit(static_cast<unsigned char>(value[i])))
      tok += value[i++];
    int v = 0;
    if (!parse_int(tok, &v)) throw DznError("expected an integer in array literal", line);
    av.flat.push_back(v);
  }
  skip_ws();
  if (i >= value.size() || value[i] != ')') throw DznError("expected ')' closing the array", line);
  ++i;
  skip_ws();
  if (i != value.size()) throw DznError("unexpected content after array value", line);
  return av;
}

}  // namespace

DataFileSpec read_data_file(std::string_view text) {
  std::vector<Statement> statements = split_statements(text);
  if (statements.empty()) throw DznError("empty data file", 1);

  std::map<std::string, std::pair<int, int>> scalars;       // name -> (value, line)
  std::map<std::string, std::pair<ArrayValue, int>> arrays;  // name -> (value, line)
  for (const Statement& st : statements) {
    if (scalars.count(st.name) || arrays.count(st.name))
      throw DznError("duplicate field '" + st.name + "'", st.line);
    int v = 0;
    if (parse_int(st.value, &v))
      scalars.emplace(st.name, std::make_pair(v, st.line));
    else
      arrays.emplace(st.name, std::make_pair(parse_array(st.value, st.line), st.line));
  }

  auto scalar = [&](const char* name) {
    auto it = scalars.find(name);
    if (it == scalars.end()) throw DznError(std::string("missing field '") + name + "'", 1);
    return it->second.first;
  };
  auto resolve_dim = [&](const std::string& bound, int line) {
    int v = 0;
    if (parse_int(bound, &v)) return v;
    auto it = scalars.find(bound);
    if (it == scalars.end()) throw DznError("unknown index bound '" + bound + "'", line);
    return it->second.first;
  };
  auto array = [&](const char* name, std::initializer_list<const char*> dims) {
    auto it = arrays.find(name);
    if (it == arrays.end()) throw DznError(std::string("missing field '") + name + "'", 1);
    const ArrayValue& av = it->second.first;
    const int line = it->second.second;
    if (av.dims.size() != dims.size())
      throw DznError(std::string("wrong dimension count for '") + name + "'", line);
    long expected = 1;
    size_t d = 0;
    for (const char* want : dims) {
      if (av.dims[d] != want)
        throw DznError(std::string("index set of '") + name + "' must be 1.." + want, line);
      expected *= resolve_dim(av.dims[d], line);
      ++d;
    }
    if (static_cast<long>(av.flat.size()) != expected)
      throw DznError(std::string("'") + name + "' has the wrong number of entries", line);
    return av.flat;
  };

  DataFileSpec spec;
  spec.sigma = scalar("sigma");
  spec.word_length = scalar("wordLength");
  const int nr_patterns = scalar("nrPatterns");
  if (nr_patterns < 1) throw DznError("formulas are non-empty: nrPatterns must be >= 1",
                                      scalars.at("nrPatterns").second);

  std::vector<std::string> known = {"sigma", "wordLength", "nrPatterns"};
  if (arrays.count("patterns")) {
    SignedPatternTable t;
    t.max_pattern_length = scalar("maxPatternLength");
    t.max_nr_vars = scalar("maxNrVars");
    std::vector<int> flat = array("patterns", {"nrPatterns", "maxPatternLength"});
    for (int p = 0; p < nr_patterns; ++p)
      t.rows.emplace_back(flat.begin() + p * t.max_pattern_length,
                          flat.begin() + (p + 1) * t.max_pattern_length);
    t.nr_vars_in_pattern = array("nrVarsInPattern", {"nrPatterns"});
    spec.table = std::move(t);
    known.insert(known.end(),
                 {"maxPatternLength", "maxNrVars", "patterns", "nrVarsInPattern"});
  } else if (arrays.count("repetitions")) {
    TuplePatternTable t;
    t.max_nr_occs = scalar("maxNrOccs");
    t.max_nr_vars = scalar("maxNrVars");
    t.nr_permutations = scalar("nrPermutations");
    std::vector<int> flat = array("repetitions", {"nrPatterns", "maxNrOccs", "4"});
    size_t k = 0;
    for (int p = 0; p < nr_patterns; ++p) {
      std::vector<std::array<int, 4>> row;
      for (int o = 0; o < t.max_nr_occs; ++o) {
        row.push_back({flat[k], flat[k + 1], flat[k + 2], flat[k + 3]});
        k += 4;
      }
      t.rows.push_back(std::move(row));
    }
    t.nr_vars_in_pattern = array("nrVarsInPattern", {"nrPatterns"});
    t.nr_perms_in_pattern = array("nrPermsInPattern", {"nrPatterns"});
    std::vector<int> pf =
        array("permutations", {"nrPatterns", "nrPermutations", "maxNrOccs", "sigma"});
    size_t j = 0;
    for (int p = 0; p < nr_patterns * t.nr_permutations; ++p) {
      std::vector<std::vector<int>> maps;
      for (int o = 0; o < t.max_nr_occs; ++o) {
        maps.emplace_back(pf.begin() + static_cast<long>(j),
                          pf.begin() + static_cast<long>(j) + spec.sigma);
        j += spec.sigma;
      }
      t.permutation_rows.push_back(std::move(maps));
    }
    spec.table = std::move(t);
    known.insert(known.end(), {"maxNrOccs", "maxNrVars", "nrPermutations", "repetitions",
                               "nrVarsInPattern", "nrPermsInPattern", "permutations"});
  } else {
    throw DznError("missing pattern table ('patterns' or 'repetitions')", 1);
  }

  const bool has_morphic = scalars.count("morphicWordLength") || arrays.count("morphicWord") ||
                           scalars.count("numberOfMorphicWordImages") ||
                           arrays.count("morphicWordImagesLengths");
  if (has_morphic) {
    MorphicBlock m;
    const int mwl = scalar("morphicWordLength");
    m.morphic_word = array("morphicWord", {"morphicWordLength"});
    if (static_cast<int>(m.morphic_word.size()) != mwl)
      throw DznError("morphicWordLength does not match morphicWord", 1);
    const int images = scalar("numberOfMorphicWordImages");
    m.image_lengths = array("morphicWordImagesLengths", {"numberOfMorphicWordImages"});
    if (static_cast<int>(m.image_lengths.size()) != images)
      throw DznError("numberOfMorphicWordImages does not match morphicWordImagesLengths", 1);
    spec.morphic = std::move(m);
    known.insert(known.end(), {"morphicWordLength", "morphicWord", "numberOfMorphicWordImages",
                               "morphicWordImagesLengths"});
  }

  for (const Statement& st : statements)
    if (std::find(known.begin(), known.end(), st.name) == known.end())
      throw DznError("unknown field '" + st.name + "'", st.line);

  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw DznError(e.what(), 1);
  }
  return spec;
}

Word parse_solution_word(std::string_view text, std::optional<int> sigma) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size() || text[i] != '[')
    throw std::invalid_argument("solution word must start with '['");
  ++i;
  std::vector<int> letters;
  skip_ws();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    for (;;) {
      skip_ws();
      std::string tok;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        tok += text[i++];
      int v = 0;
      if (!parse_int(tok, &v)) throw std::invalid_argument("expected a letter in the solution word");
      if (v < 1) throw std::invalid_argument("solution letters are 1-based");
      if (sigma && v > *sigma)
        throw std::invalid_argument("letter " + std::to_string(v) + " outside 1.." +
                                    std::to_string(*sigma));
      letters.push_back(v - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ']') {
        ++i;
        break;
      }
      throw std::invalid_argument("expected ',' or ']' in the solution word");
    }
  }
  skip_ws();
  if (i != text.size()) throw std::invalid_argument("unexpected content after the solution word");
  int alphabet = sigma ? *sigma : 1;
  if (!sigma)
    for (int a : letters) alphabet = std::max(alphabet, a + 1);
  return Word(Alphabet(alphabet), std::move(letters));
}

}  // namespace avoid
