// polarlex: build domain-aware adjective polarity lexicons.
//
//   polarlex extract --domain NAME --tagset eagles|upos --min-freq N FILES...
//   polarlex intersect FILES...
//   polarlex analyze --annotations FILE --tau T --out FILE --format structured|tabular
//   polarlex report FILE
//   polarlex serve --data DIR --listen ADDR

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include "CLI11.hpp"
#include "polarlex/corpus.h"
#include "polarlex/error.h"
#include "polarlex/http_api.h"
#include "polarlex/lexicon.h"
#include "polarlex/service.h"

namespace fs = std::filesystem;
using namespace polarlex;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitData = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
  out << content;
  if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + path.string());
}

struct ExtractOptions {
  std::vector<std::string> domains;
  std::string tagset = "eagles";
  std::uint64_t min_freq = 1;
  std::string out_dir = ".";
  std::vector<std::string> files;
};

int run_extract(const ExtractOptions& opt) {
  if (opt.domains.size() != opt.files.size()) {
    std::cerr << "extract: give one --domain per corpus file (" << opt.domains.size()
              << " domains, " << opt.files.size() << " files)\n";
    return kExitData;
  }
  const TagsetRule rule = opt.tagset == "upos" ? TagsetRule::upos() : TagsetRule::eagles();
  fs::create_directories(opt.out_dir);
  for (std::size_t i = 0; i < opt.files.size(); ++i) {
    std::ifstream in(opt.files[i], std::ios::binary);
    if (!in) {
      std::cerr << "extract: cannot read " << opt.files[i] << '\n';
      return kExitIo;
    }
    DomainCorpus corpus;
    try {
      corpus = parse_tagged_stream(in, opt.domains[i]);
    } catch (const FormatError& e) {
      std::cerr << opt.files[i] << ":" << e.line() << ": " << e.what() << '\n';
      return kExitData;
    }
    const auto inventory =
        apply_min_frequency(extract_adjectives(corpus, rule), opt.min_freq);
    const fs::path out = fs::path(opt.out_dir) / (opt.domains[i] + ".freq");
    write_file(out, write_frequency_file(inventory));
    std::cerr << opt.domains[i] << ": " << corpus.token_count() << " tokens, "
              << inventory.counts.size() << " adjective lemmas -> " << out.string() << '\n';
  }
  return 0;
}

int run_intersect(const std::vector<std::string>& files, const std::string& out_path) {
  std::vector<LemmaFrequency> inventories;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) {
      std::cerr << "intersect: cannot read " << f << '\n';
      return kExitIo;
    }
    try {
      inventories.push_back(read_frequency_file(in));
    } catch (const FormatError& e) {
      std::cerr << f << ":" << e.line() << ": " << e.what() << '\n';
      return kExitData;
    }
  }
  const auto lemmas = shared_lemmas(inventories);
  const std::string text = write_lemma_list(lemmas);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  std::cerr << lemmas.size() << " lemmas shared by " << inventories.size() << " domains\n";
  return 0;
}

struct AnalyzeOptions {
  std::string annotations;
  double tau = 0.0;
  std::string out;
  std::string format = "structured";
};

int run_analyze(const AnalyzeOptions& opt) {
  std::ifstream in(opt.annotations, std::ios::binary);
  if (!in) {
    std::cerr << "analyze: cannot read " << opt.annotations << '\n';
    return kExitIo;
  }
  AnnotationMatrix matrix;
  try {
    matrix = import_tsv(in);
  } catch (const FormatError& e) {
    std::cerr << opt.annotations << ":" << e.line() << ": " << e.what() << '\n';
    return kExitData;
  }
  const LexiconBuild build = build_lexicon(matrix, ClassifierConfig{opt.tau});
  for (const auto& w : build.warnings) std::cerr << "warning: " << w << '\n';
  const auto format =
      opt.format == "tabular" ? LexiconFormat::kTabular : LexiconFormat::kStructured;
  write_file(opt.out, write_lexicon(build.lexicon, format));
  std::cout << render_report(build.lexicon.report);
  return 0;
}

int run_report(const std::string& path) {
  const Lexicon lex = read_lexicon(read_file(path));
  std::cout << render_report(lex.report);
  return 0;
}

ApiServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const std::string& data_dir, const std::string& listen) {
  const auto [host, port] = parse_listen_address(listen);
  AnnotationService service(data_dir);
  if (service.recovered_torn_tail())
    std::cerr << "serve: dropped an unterminated final line from the event log\n";
  ApiServer server(service);
  const int bound = server.bind(host, port);
  g_server = &server;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cerr << "serving " << data_dir << " on " << host << ":" << bound << " (dataset "
            << service.dataset_version() << ")\n";
  server.run();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain-aware adjective polarity lexicon toolkit"};
  app.require_subcommand(1);

  ExtractOptions extract;
  auto* extract_cmd = app.add_subcommand("extract", "Count adjective lemmas per domain corpus");
  extract_cmd->add_option("--domain", extract.domains, "Domain name, one per corpus file")
      ->required();
  extract_cmd->add_option("--tagset", extract.tagset, "Adjective tag convention")
      ->check(CLI::IsMember({"eagles", "upos"}));
  extract_cmd->add_option("--min-freq", extract.min_freq, "Drop lemmas seen fewer times")
      ->check(CLI::PositiveNumber);
  extract_cmd->add_option("--out-dir", extract.out_dir, "Directory for DOMAIN.freq files");
  extract_cmd->add_option("files", extract.files, "Tagged corpus files")->required();

  std::vector<std::string> intersect_files;
  std::string intersect_out;
  auto* intersect_cmd =
      app.add_subcommand("intersect", "List lemmas present in every frequency file");
  intersect_cmd->add_option("files", intersect_files, "DOMAIN.freq files")->required();
  intersect_cmd->add_option("--out", intersect_out, "Write the lemma list here instead of stdout");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Aggregate annotations into a lexicon");
  analyze_cmd->add_option("--annotations", analyze.annotations, "Annotation TSV")->required();
  analyze_cmd->add_option("--tau", analyze.tau, "Deviation threshold")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--out", analyze.out, "Lexicon output path")->required();
  analyze_cmd->add_option("--format", analyze.format, "Output format")
      ->check(CLI::IsMember({"structured", "tabular"}));

  std::string report_path;
  auto* report_cmd = app.add_subcommand("report", "Print the summary of a structured lexicon");
  report_cmd->add_option("file", report_path, "Structured lexicon")->required();

  std::string data_dir;
  std::string listen = "127.0.0.1:8080";
  auto* serve_cmd = app.add_subcommand("serve", "Host live annotation sessions over HTTP");
  serve_cmd->add_option("--data", data_dir, "Directory with lemmas.txt and domains.txt")
      ->required();
  serve_cmd->add_option("--listen", listen, "HOST:PORT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitData;
  }

  try {
    if (*extract_cmd) return run_extract(extract);
    if (*intersect_cmd) return run_intersect(intersect_files, intersect_out);
    if (*analyze_cmd) return run_analyze(analyze);
    if (*report_cmd) return run_report(report_path);
    if (*serve_cmd) return run_serve(data_dir, listen);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
