#include "itercert/seqfile.hpp"

#include <fstream>
#include <sstream>

namespace itercert {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Int> parse_int_list(const std::string& s, const std::string& where,
                                int line_no) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    try {
      out.emplace_back(item);
    } catch (const std::exception&) {
      throw InputError(where + " line " + std::to_string(line_no) +
                       ": bad integer '" + item + "'");
    }
  }
  if (out.empty())
    throw InputError(where + " line " + std::to_string(line_no) +
                     ": empty integer list");
  return out;
}

}  // namespace

SequenceFile SequenceFile::parse(std::istream& in, const std::string& origin) {
  SequenceFile sf;
  const std::string where = origin.empty() ? "<input>" : origin;
  enum class Section { None, Sequences, Chains, Polynomials } section =
      Section::None;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[sequences]")
        section = Section::Sequences;
      else if (line == "[chains]")
        section = Section::Chains;
      else if (line == "[polynomials]")
        section = Section::Polynomials;
      else
        throw InputError(where + " line " + std::to_string(line_no) +
                         ": unknown section " + line);
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos || section == Section::None)
      throw InputError(where + " line " + std::to_string(line_no) +
                       ": expected 'name: ...' inside a section");
    std::string name = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (name.empty())
      throw InputError(where + " line " + std::to_string(line_no) +
                       ": empty name");

    if (section == Section::Sequences) {
      int order = 0;
      std::vector<Int> coeffs, initial;
      Int inhom = 0;
      bool have_coeffs = false, have_initial = false;
      std::stringstream ss(rest);
      std::string field;
      while (ss >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos)
          throw InputError(where + " line " + std::to_string(line_no) +
                           ": expected key=value, got '" + field + "'");
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "order")
          order = std::stoi(val);
        else if (key == "coeffs")
          coeffs = parse_int_list(val, where, line_no), have_coeffs = true;
        else if (key == "inhom")
          inhom = Int(val);
        else if (key == "initial")
          initial = parse_int_list(val, where, line_no), have_initial = true;
        else
          throw InputError(where + " line " + std::to_string(line_no) +
                           ": unknown key '" + key + "'");
      }
      if (order == 0 || !have_coeffs || !have_initial)
        throw InputError(where + " line " + std::to_string(line_no) +
                         ": sequence needs order, coeffs and initial");
      try {
        sf.seqs_.emplace(name, IlrsSpec::validate(order, std::move(coeffs),
                                                  std::move(inhom),
                                                  std::move(initial), name));
      } catch (const Error& e) {
        throw InputError(where + " line " + std::to_string(line_no) + ": " +
                         e.what());
      }
    } else if (section == Section::Chains) {
      std::vector<std::string> refs;
      std::stringstream ss(rest);
      std::string ref;
      while (ss >> ref) refs.push_back(ref);
      if (refs.empty())
        throw InputError(where + " line " + std::to_string(line_no) +
                         ": empty chain");
      sf.chains_[name] = std::move(refs);
    } else {
      try {
        sf.polys_.emplace(
            name, MinPoly::validate(parse_int_list(rest, where, line_no)));
      } catch (const Error& e) {
        throw InputError(where + " line " + std::to_string(line_no) + ": " +
                         e.what());
      }
    }
  }
  // All chain references must resolve.
  for (const auto& [name, refs] : sf.chains_) {
    for (const auto& ref : refs) {
      if (!sf.seqs_.count(ref))
        throw InputError(where + ": chain '" + name +
                         "' references unknown sequence '" + ref + "'");
    }
  }
  return sf;
}

SequenceFile SequenceFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open sequence file: " + path);
  return parse(in, path);
}

const IlrsSpec& SequenceFile::sequence(const std::string& name) const {
  auto it = seqs_.find(name);
  if (it == seqs_.end()) throw InputError("unknown sequence: " + name);
  return it->second;
}

const MinPoly& SequenceFile::polynomial(const std::string& name) const {
  auto it = polys_.find(name);
  if (it == polys_.end()) throw InputError("unknown polynomial: " + name);
  return it->second;
}

CompositionChain SequenceFile::chain(const std::string& name) const {
  auto it = chains_.find(name);
  if (it == chains_.end()) {
    return CompositionChain::create({sequence(name)}, name);
  }
  std::vector<IlrsSpec> levels;
  for (const auto& ref : it->second) levels.push_back(sequence(ref));
  try {
    return CompositionChain::create(std::move(levels), name);
  } catch (const Error& e) {
    throw InputError("chain '" + name + "': " + e.what());
  }
}

}  // namespace itercert
