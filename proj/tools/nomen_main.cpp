// Command line front end: annotate text with proper-name mentions,
// validate a knowledge base, score predictions against a gold standard,
// print KB statistics.

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nomen/eval.hpp"
#include "nomen/kb.hpp"
#include "nomen/pipeline.hpp"
#include "nomen/rules.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitLoad = 2;
constexpr int kExitEval = 3;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string doc_id_from_path(const std::string& path) {
  if (path == "-") return "stdin";
  size_t slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = name.find_last_of('.');
  if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return name;
}

struct InputDoc {
  std::string doc_id;
  std::string text;
};

// A line-JSON stream of {doc_id, text} objects, or plain text as a single
// document.
std::vector<InputDoc> parse_input(const std::string& content,
                                  const std::string& path) {
  std::vector<InputDoc> docs;
  size_t first = content.find_first_not_of(" \t\r\n");
  bool looks_jsonl = first != std::string::npos && content[first] == '{';
  if (looks_jsonl) {
    std::istringstream in(content);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("input line " + std::to_string(lineno) + ": " +
                                 e.what());
      }
      if (!j.contains("doc_id") || !j.contains("text"))
        throw std::runtime_error("input line " + std::to_string(lineno) +
                                 ": need doc_id and text");
      docs.push_back(
          {j["doc_id"].get<std::string>(), j["text"].get<std::string>()});
    }
  } else {
    docs.push_back({doc_id_from_path(path), content});
  }
  return docs;
}

void write_out(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proper-name segmentation and categorization"};
  app.require_subcommand(1);

  std::vector<std::string> kb_paths;
  std::string rules_path, in_path = "-", out_path = "-", format = "jsonl";
  std::string gold_path, pred_path;

  auto* annotate = app.add_subcommand("annotate", "Annotate documents");
  annotate
      ->add_option("--kb", kb_paths,
                   "KB file (repeatable, later files overlay earlier)")
      ->required();
  annotate->add_option("--rules", rules_path, "rule pack file");
  annotate->add_option(
      "--in", in_path, "input file or - (plain text, or line-JSON documents)");
  annotate->add_option("--out", out_path, "output file or -");
  annotate->add_option("--format", format, "output format (jsonl)");

  auto* validate = app.add_subcommand("validate", "Validate a knowledge base");
  validate->add_option("--kb", kb_paths, "KB file (repeatable)")->required();

  auto* eval = app.add_subcommand("eval", "Score predictions against gold");
  eval->add_option("--gold", gold_path, "gold annotation file")->required();
  eval->add_option("--pred", pred_path, "predicted annotation file")
      ->required();

  auto* stats = app.add_subcommand("stats", "Knowledge base statistics");
  stats->add_option("--kb", kb_paths, "KB file (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (annotate->parsed()) {
      if (format != "jsonl") {
        std::cerr << "unsupported format '" << format << "'\n";
        return kExitUsage;
      }
      nomen::KnowledgeBase kb;
      nomen::RulePack pack;
      try {
        kb = nomen::load_kb_files(kb_paths);
        if (!rules_path.empty()) pack = nomen::load_rules_file(rules_path);
        nomen::Annotator annotator(kb, std::move(pack));
        auto docs = parse_input(read_all(in_path), in_path);
        std::string out;
        for (const auto& doc : docs) {
          for (const auto& rec : annotator.annotate(doc.doc_id, doc.text)) {
            out += nomen::to_jsonl(rec);
            out += "\n";
          }
        }
        write_out(out_path, out);
        return 0;
      } catch (const nomen::LoadError& e) {
        std::cerr << e.what() << "\n";
        return kExitLoad;
      } catch (const nomen::RuleError& e) {
        std::cerr << e.what() << "\n";
        return kExitLoad;
      }
    }
    if (validate->parsed()) {
      nomen::KnowledgeBase kb;
      try {
        kb = nomen::load_kb_files(kb_paths);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitLoad;
      }
      nomen::ValidationReport report = nomen::validate_kb(kb);
      if (report.ok()) {
        std::cout << "ok\n";
        return 0;
      }
      std::cout << report.to_string();
      return kExitLoad;
    }
    if (eval->parsed()) {
      try {
        nomen::EvalReport report =
            nomen::eval_corpus(read_all(gold_path), read_all(pred_path));
        std::cout << report.to_string();
        return 0;
      } catch (const nomen::EvalError& e) {
        std::cerr << e.what() << "\n";
        return kExitEval;
      }
    }
    if (stats->parsed()) {
      nomen::KnowledgeBase kb;
      try {
        kb = nomen::load_kb_files(kb_paths);
      } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitLoad;
      }
      size_t shared = 0, homonym_refs = 0;
      std::map<nomen::NormKey, std::set<nomen::RefId>> owners;
      for (const auto& f : kb.forms()) owners[f.key].insert(f.owner);
      for (const auto& [key, refs] : owners)
        if (refs.size() > 1) ++shared;
      for (const auto& r : kb.references())
        if (!r.homonyms.empty()) ++homonym_refs;
      std::cout << "categories " << kb.categories().size() << "\n"
                << "attributes " << kb.attributes().size() << "\n"
                << "words " << kb.words().size() << "\n"
                << "equivalence-classes " << kb.equivs().size() << "\n"
                << "forms " << kb.forms().size() << "\n"
                << "references " << kb.references().size() << "\n"
                << "homonym-linked-references " << homonym_refs << "\n"
                << "shared-forms " << shared << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
