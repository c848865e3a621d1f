// Deterministically generates the bundled synthetic evaluation corpus:
// French-style newswire snippets assembled from templates over the sample
// KB, with byte-exact gold annotations emitted alongside. The corpus mixes
// directly solvable constructions with known-hard ones (bare radicals with
// conflicting containers, uncategorizable expansions, names with internal
// commas) so the scores stay meaningful.

#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

using nlohmann::ordered_json;

struct Gold {
  size_t start, end;
  std::string surface, category;
};

struct DocBuilder {
  std::string text;
  std::vector<Gold> gold;

  void lit(const std::string& s) { text += s; }
  void name(const std::string& surface, const std::string& category) {
    gold.push_back(
        {text.size(), text.size() + surface.size(), surface, category});
    text += surface;
  }
};

struct Pools {
  std::mt19937 rng{20240604};
  std::set<std::string> used;  // per-document; avoids radical collisions

  void fresh_doc() { used.clear(); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[rng() % v.size()];
  }

  std::string pick_unique(const std::vector<std::string>& v) {
    for (int tries = 0; tries < 64; ++tries) {
      const std::string& s = v[rng() % v.size()];
      if (used.insert(s).second) return s;
    }
    return v[rng() % v.size()];
  }

  std::vector<std::pair<std::string, std::string>> known = {
      {"New York", "location"},      {"France", "location"},
      {"Paris", "location"},         {"Houston", "location"},
      {"Dallas", "location"},        {"Berlin", "location"},
      {"Londres", "location"},       {"Tokyo", "location"},
      {"Washington", "location"},    {"Allemagne", "location"},
      {"IBM", "company"},            {"Nissan", "company"},
      {"Honda", "company"},          {"Express", "company"},
      {"Renault", "company"},        {"Peugeot", "company"},
      {"Siemens", "company"},        {"Société Générale", "bank"},
      {"Paribas", "bank"},           {"Banque de France", "bank"},
      {"Crédit Agricole", "bank"},   {"Standard and Poor's", "rating-agency"},
      {"Kennedy", "human-being"},    {"Bernard Tapie", "human-being"},
      {"Boris Eltsine", "human-being"}, {"Le Point", "newspaper-company"},
      {"Caisse des Dépôts", "bank"}, {"CDC", "bank"},
      {"Missouri", "location"},      {"Rwanda", "location"}};

  std::vector<std::pair<std::string, std::string>> variants = {
      {"Hexagone", "location"},          {"Rue d'Antin", "bank"},
      {"NY", "location"},                {"NewYork", "location"},
      {"New-York", "location"},          {"SetP", "rating-agency"},
      {"S-Poors", "rating-agency"},      {"Sté générale", "bank"},
      {"Standard et Poor's", "rating-agency"},
      {"Standard and Poors", "rating-agency"},
      {"Boris Elstine", "human-being"},  {"Boris Etlstine", "human-being"},
      {"Boris Yeltsine", "human-being"}, {"Groupe Express", "company"},
      {"Etats-Unis", "location"},        {"United States", "location"},
      {"Cie Générale des Eaux", "company"}};

  std::vector<std::string> locations = {"France",  "Paris",      "Houston",
                                        "Dallas",  "Berlin",     "Tokyo",
                                        "Londres", "Washington", "Allemagne"};
  std::vector<std::string> companies = {"IBM",     "Nissan",  "Honda",
                                        "Express", "Renault", "Peugeot",
                                        "Siemens"};
  std::vector<std::string> first_names = {
      "André",    "Guy",    "Jean",  "Pierre", "Marie",    "Jacques",
      "François", "Michel", "Alain", "Philippe", "Sophie", "Claire",
      "Paul",     "Henri",  "Nathalie", "Isabelle"};
  std::vector<std::string> surnames = {
      "Blavier", "Peskine", "Morel",  "Vidal",   "Lemoine", "Karsenty",
      "Drucker", "Fabre",   "Moreau", "Garnier", "Lefort",  "Magnin",
      "Rouvier", "Castel",  "Bonnard", "Tissier"};
  std::vector<std::string> stems = {
      "Kyocera", "Fibaly", "Tekelec", "Novatech", "Ardatis", "Baxtor",
      "Celindo", "Dorval", "Elmatec", "Fairmont", "Gavotte", "Helvin",
      "Ixande",  "Jorelle", "Kavalex", "Lumitech"};
  std::vector<std::string> legals = {"Corp", "Co", "Ltd", "SA", "Inc"};
  std::vector<std::string> activities = {"Motor",      "Finance",
                                         "Automobile", "Industries",
                                         "Telecom",    "Electronique"};
  std::vector<std::pair<std::string, std::string>> sur_pairs = {
      {"Condé", "Huisne"},    {"Vaux", "Seine"},
      {"Brie", "Marne"},      {"Romilly", "Andelle"},
      {"Availles", "Limouzine"}, {"Ners", "Gardon"}};
  std::vector<std::string> appositions = {"directeur", "président",
                                          "ministre", "secrétaire"};
  std::vector<std::string> towns = {"Gisenyi", "Brumath", "Gstaad",
                                    "Quimperlé", "Sarlat"};
};

using Template = void (*)(DocBuilder&, Pools&);

void t_known(DocBuilder& b, Pools& p) {
  const auto& [surface, cat] = p.pick(p.known);
  switch (p.rng() % 3) {
    case 0:
      b.lit("Selon ");
      b.name(surface, cat);
      b.lit(", la tendance se confirme. ");
      break;
    case 1:
      b.name(surface, cat);
      b.lit(" a publié ses résultats hier. ");
      break;
    default:
      b.lit("Les analystes suivent ");
      b.name(surface, cat);
      b.lit(" avec attention. ");
      break;
  }
}

void t_variant(DocBuilder& b, Pools& p) {
  const auto& [surface, cat] = p.pick(p.variants);
  b.lit("Les investisseurs citent ");
  b.name(surface, cat);
  b.lit(" dans leur note. ");
}

void t_person(DocBuilder& b, Pools& p) {
  std::string full = p.pick(p.first_names) + " " + p.pick_unique(p.surnames);
  if (p.rng() % 2) {
    b.name(full, "human-being");
    b.lit(" a rejoint le conseil de surveillance. ");
  } else {
    b.name(full, "human-being");
    b.lit(", " + p.pick(p.appositions) +
          " du groupe, a commenté la décision. ");
  }
}

void t_company(DocBuilder& b, Pools& p) {
  b.lit("Le groupe ");
  b.name(p.pick_unique(p.stems) + " " + p.pick(p.legals), "company");
  b.lit(" investit massivement. ");
}

void t_sur_location(DocBuilder& b, Pools& p) {
  const auto& [a, c] = p.pick(p.sur_pairs);
  b.lit("La commune de ");
  b.name(a + "-sur-" + c, "location");
  b.lit(" accueille le salon régional. ");
}

void t_known_extension(DocBuilder& b, Pools& p) {
  b.name(p.pick(p.companies) + " " + p.pick(p.activities), "company");
  b.lit(" annonce une restructuration. ");
}

void t_company_location(DocBuilder& b, Pools& p) {
  b.name(p.pick(p.companies) + "-" + p.pick(p.locations), "company");
  b.lit(" recrute trois cents personnes. ");
}

void t_human_extension(DocBuilder& b, Pools& p) {
  std::string human = p.rng() % 2 ? "Bernard Tapie" : "Kennedy";
  b.name(human + " " + p.pick(p.activities), "company");
  b.lit(" prépare une augmentation de capital. ");
}

void t_chain(DocBuilder& b, Pools& p) {
  b.name(p.pick_unique(p.stems) + " " + p.pick(p.companies) + " " +
             p.pick(p.activities) + " Co Ltd",
         "company");
  b.lit(" serait une filiale du groupe. ");
}

void t_apposition(DocBuilder& b, Pools& p) {
  b.name(p.pick_unique(p.surnames), "human-being");
  b.lit(", " + p.pick(p.appositions) + " de la société, s'est exprimé. ");
}

void t_mayor(DocBuilder& b, Pools& p) {
  b.lit("Le maire de ");
  b.name(p.pick(p.towns), "location");
  b.lit(" a inauguré la nouvelle ligne. ");
}

void t_shareholders(DocBuilder& b, Pools& p) {
  b.lit("Les actionnaires de ");
  b.name(p.pick_unique(p.stems), "company");
  b.lit(" ont approuvé les comptes. ");
}

void t_acronym_known(DocBuilder& b, Pools& p) {
  struct Def {
    const char* expansion;
    const char* acro;
    const char* cat;
  };
  static const std::vector<Def> defs = {
      {"Compagnie Générale des Eaux", "CGE", "company"},
      {"Banque de France", "BDF", "bank"},
      {"Caisse des Dépôts et Consignations", "CDC", "bank"},
      {"Crédit Agricole", "CA", "bank"}};
  const Def& d = defs[p.rng() % defs.size()];
  b.lit("La ");
  b.name(d.expansion, d.cat);
  b.lit(" (");
  b.name(d.acro, d.cat);
  b.lit(") publie sa note de conjoncture. La ");
  b.name(d.acro, d.cat);
  b.lit(" prévoit une amélioration. ");
}

void t_radical(DocBuilder& b, Pools& p) {
  std::string stem = p.pick_unique(p.stems);
  b.name(stem + " " + p.pick(p.legals), "company");
  b.lit(" dévoile un plan triennal. Le titre ");
  b.name(stem, "company");
  b.lit(" gagne deux pour cent. ");
}

void t_kennedy_jr(DocBuilder& b, Pools& p) {
  b.name("Kennedy Jr", "human-being");
  b.lit(" participe au forum de ");
  b.name(p.pick(p.locations), "location");
  b.lit(". ");
}

void t_paren_location(DocBuilder& b, Pools& p) {
  b.name(p.pick(p.towns), "location");
  b.lit(" (");
  b.name(p.pick(p.locations), "location");
  b.lit(") attire les investisseurs. ");
}

// Hard families: the gold carries the true category even where the
// pipeline cannot recover it.
void t_mitterand(DocBuilder& b, Pools& p) {
  std::string sn = p.pick_unique(p.surnames);
  b.name("Mr " + sn, "human-being");
  b.lit(" a reçu ");
  b.name("Mrs " + sn, "human-being");
  b.lit(". ");
  b.name(sn, "human-being");
  b.lit(" n'a fait aucun commentaire. ");
}

void t_subsidiary(DocBuilder& b, Pools& p) {
  b.lit("Its Belgian subsidiary specialising in flat products ");
  b.name(p.pick_unique(p.stems), "company");
  b.lit(" affiche une perte. ");
}

void t_guy_laroche(DocBuilder& b, Pools& p) {
  b.name("Guy Laroche", "company");
  b.lit(" présente une collection à ");
  b.name(p.pick(p.locations), "location");
  b.lit(". ");
}

void t_sbf(DocBuilder& b, Pools&) {
  b.lit("La ");
  b.name("Société des Bourses Françaises", "company");
  b.lit(" (");
  b.name("SBF", "company");
  b.lit(") modernise la cote. La ");
  b.name("SBF", "company");
  b.lit(" précise ses règles. ");
}

void t_dollfus(DocBuilder& b, Pools&) {
  b.lit("Le directeur de ");
  b.name("Dollfus, Mieg et Cie", "company");  // the pipeline fragments this
  b.lit(" a annoncé des résultats positifs. ");
}

// Homonym-sensitive documents, standalone so evidence cannot leak.
void t_hospital(DocBuilder& b, Pools&) {
  b.name("Saint Louis", "institution");
  b.lit(" accueille un congrès médical. L'");
  b.name("Hôpital Saint Louis", "institution");
  b.lit(" agrandit ses services. ");
}

void t_title_fallback(DocBuilder& b, Pools&) {
  b.name("Saint Louis", "company");
  b.lit(": résultats en hausse");
}

void t_stlouis_missouri(DocBuilder& b, Pools&) {
  b.name("St-Louis", "location");
  b.lit(" (");
  b.name("Missouri", "location");
  b.lit(") prépare les élections locales. ");
}

void t_mayor_stlouis(DocBuilder& b, Pools&) {
  b.lit("Le maire de ");
  b.name("Saint-Louis", "location");
  b.lit(" a présenté le budget municipal. ");
}

void t_generale_evidence(DocBuilder& b, Pools&) {
  b.lit("La ");
  b.name("Société Générale", "bank");
  b.lit(" détaille son plan. ");
  b.name("La Générale", "bank");
  b.lit(" engage trois cents recrues. ");
}

void t_generale_alone(DocBuilder& b, Pools&) {
  b.name("La Générale", "bank");
  b.lit(" engage trois cents recrues. ");
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = argc > 1 ? argv[1] : "data/corpus";

  Pools pools;
  std::vector<Template> safe = {
      t_known,           t_known,          t_variant,
      t_person,          t_company,        t_sur_location,
      t_known_extension, t_company_location, t_human_extension,
      t_chain,           t_apposition,     t_mayor,
      t_shareholders,    t_radical,        t_kennedy_jr,
      t_paren_location};
  std::vector<Template> standalone = {
      t_hospital,         t_title_fallback, t_stlouis_missouri,
      t_mayor_stlouis,    t_generale_evidence, t_generale_alone,
      t_acronym_known,    t_mitterand,      t_subsidiary,
      t_guy_laroche,      t_sbf,            t_dollfus,
      t_acronym_known,    t_mitterand,      t_hospital,
      t_title_fallback,   t_sbf,            t_subsidiary,
      t_guy_laroche,      t_dollfus};

  std::ostringstream docs, gold;
  size_t gold_count = 0;
  int doc_num = 0;

  auto emit = [&](const DocBuilder& b) {
    std::string doc_id = "doc" + std::to_string(++doc_num);
    ordered_json d;
    d["doc_id"] = doc_id;
    d["text"] = b.text;
    docs << d.dump() << "\n";
    for (const auto& g : b.gold) {
      ordered_json j;
      j["doc_id"] = doc_id;
      j["start_byte"] = g.start;
      j["end_byte"] = g.end;
      j["surface"] = g.surface;
      j["category"] = g.category;
      gold << j.dump() << "\n";
      ++gold_count;
    }
  };

  for (int i = 0; i < 66; ++i) {
    DocBuilder b;
    pools.fresh_doc();
    int sentences = 5 + static_cast<int>(pools.rng() % 4);
    for (int s = 0; s < sentences; ++s)
      safe[pools.rng() % safe.size()](b, pools);
    emit(b);
  }
  for (Template t : standalone) {
    DocBuilder b;
    pools.fresh_doc();
    t(b, pools);
    emit(b);
  }

  std::ofstream df(out_dir + "/docs.jsonl", std::ios::binary);
  std::ofstream gf(out_dir + "/gold.jsonl", std::ios::binary);
  if (!df || !gf) {
    std::cerr << "cannot write to " << out_dir << "\n";
    return 1;
  }
  df << docs.str();
  gf << gold.str();
  std::cout << doc_num << " documents, " << gold_count << " gold mentions\n";
  return 0;
}
