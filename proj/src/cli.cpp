// Copyright 2026 The Chronoscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronoscope/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <thread>

#include <pthread.h>

#include "CLI11.hpp"
#include "chronoscope/corpus_store.hpp"
#include "chronoscope/csv.hpp"
#include "chronoscope/error.hpp"
#include "chronoscope/query.hpp"
#include "chronoscope/service.hpp"
#include "chronoscope/text_index.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace chronoscope {

namespace {

// Used by `synth` when no --vocab file is given.
const std::vector<std::string> kDefaultVocabulary = {
    "market", "growth", "strategy", "management", "company", "customer",
    "innovation", "leadership", "trade", "economy", "price", "cost",
    "profit", "loss", "risk", "crisis", "success", "failure", "good",
    "bad", "strong", "weak", "internet", "computer", "telephone", "radio",
    "USA", "Japan", "China", "Germany", "Russia", "United Kingdom",
    "India", "Brazil", "France", "Korea", "IBM", "General Electric",
    "Microsoft", "Apple", "Ford", "Peter Drucker", "Michael Porter",
    "Gary Hamel", "the", "of", "and", "in", "a", "to"};

// Options shared by every query subcommand.
struct SourceFlags {
  std::string config;
  std::string corpus;
  std::string lexicon;
  std::vector<std::string> gazetteers;
  std::vector<std::string> groups;
  std::string geo;
  std::vector<std::string> external;
  unsigned workers = 0;
  std::string format = "json";
};

void AddSourceFlags(CLI::App *cmd, SourceFlags &flags) {
  cmd->add_option("--config", flags.config,
                  std::string("JSON config file (default: $") + kConfigEnvVar + ")");
  cmd->add_option("--corpus", flags.corpus, "Corpus root written by ingest or synth");
  cmd->add_option("--lexicon", flags.lexicon, "Sentiment lexicon CSV (word,polarity)");
  cmd->add_option("--gazetteer", flags.gazetteers, "Gazetteer JSON; repeatable");
  cmd->add_option("--groups", flags.groups, "Group definition JSON; repeatable");
  cmd->add_option("--geo", flags.geo, "Country centroid CSV");
  cmd->add_option("--external", flags.external, "External series as name=path.csv; repeatable");
  cmd->add_option("--workers", flags.workers, "Index build threads");
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

ServiceConfig ResolveConfig(const SourceFlags &flags) {
  ServiceConfig config;
  std::string config_path = flags.config;
  if (config_path.empty()) {
    if (const char *env = std::getenv(kConfigEnvVar)) config_path = env;
  }
  if (!config_path.empty()) config = LoadServiceConfig(config_path);
  if (!flags.corpus.empty()) config.corpus = flags.corpus;
  if (!flags.lexicon.empty()) config.lexicon = fs::path(flags.lexicon);
  if (!flags.geo.empty()) config.geo = fs::path(flags.geo);
  for (const std::string &g : flags.gazetteers) config.gazetteers.emplace_back(g);
  for (const std::string &g : flags.groups) config.groups.emplace_back(g);
  for (const std::string &spec : flags.external) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("--external expects name=path, got '" + spec + "'");
    }
    config.external[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  if (flags.workers > 0) config.workers = flags.workers;
  if (config.corpus.empty()) throw UsageError("no corpus given (use --corpus or --config)");
  return config;
}

void Emit(const json &result, const std::string &format, std::ostream &out) {
  if (format == "csv") {
    out << RenderCsv(result);
  } else {
    out << result.dump(2) << '\n';
  }
}

// A query subcommand: flags collected into QueryParams for `endpoint`.
struct QueryCommand {
  std::string endpoint;
  SourceFlags sources;
  QueryParams params;
};

void AddParam(CLI::App *cmd, QueryCommand &q, const std::string &flag,
              const std::string &param, const std::string &help) {
  cmd->add_option_function<std::string>(
      flag, [&q, param](const std::string &value) { q.params[param] = value; }, help);
}

int RunServe(const ServiceConfig &config, std::ostream &err) {
  // Startup loads every configured file before the port is bound.
  std::shared_ptr<const QueryEngine> engine = QueryEngine::Load(config);
  Service service(engine, {config.bind, config.port, config.cors_origin});

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  const int port = service.Bind();
  err << "serving on http://" << config.bind << ":" << port << '\n' << std::flush;
  std::thread waiter([&] {
    int signal = 0;
    sigwait(&signals, &signal);
    service.Stop();
  });
  service.Run();
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return kExitOk;
}

}  // namespace

int CliDispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"chronoscope: year-by-year trend queries over dated document collections",
               "chronoscope"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_input, ingest_out, ingest_format = "json";
  ColumnMap columns{"date", "body", std::nullopt, std::nullopt};
  std::string col_authors, col_subjects;
  CLI::App *ingest = app.add_subcommand("ingest", "Convert a CSV export into a corpus");
  ingest->add_option("--input", ingest_input, "CSV file with a header row")->required();
  ingest->add_option("--out", ingest_out, "Corpus root to create")->required();
  ingest->add_option("--col-date", columns.date, "Header of the date column");
  ingest->add_option("--col-body", columns.body, "Header of the body column");
  ingest->add_option("--col-authors", col_authors, "Header of the authors column");
  ingest->add_option("--col-subjects", col_subjects, "Header of the subjects column");
  ingest->add_option("--format", ingest_format)->check(CLI::IsMember({"json", "csv"}));

  // synth
  SyntheticOptions synth_options;
  std::string synth_out, synth_vocab, synth_format = "json";
  CLI::App *synth = app.add_subcommand("synth", "Generate a deterministic synthetic corpus");
  synth->add_option("--out", synth_out, "Corpus root to create")->required();
  synth->add_option("--seed", synth_options.seed, "Random seed");
  synth->add_option("--from", synth_options.first_year, "First year")->required();
  synth->add_option("--to", synth_options.last_year, "Last year")->required();
  synth->add_option("--docs-per-year", synth_options.docs_per_year)->required();
  synth->add_option("--vocab", synth_vocab, "Vocabulary file, one word or phrase per line");
  synth->add_option("--min-words", synth_options.min_words);
  synth->add_option("--max-words", synth_options.max_words);
  synth->add_option("--format", synth_format)->check(CLI::IsMember({"json", "csv"}));

  // index
  SourceFlags index_sources;
  std::string index_out;
  CLI::App *index = app.add_subcommand("index", "Write the serialized per-year index");
  AddSourceFlags(index, index_sources);
  index->add_option("--out", index_out, "Directory for <year>.idx files")->required();

  // Query subcommands, one per endpoint.
  std::vector<std::pair<CLI::App *, std::unique_ptr<QueryCommand>>> queries;
  const auto add_query = [&](const std::string &name, const std::string &endpoint,
                             const std::string &help) {
    auto q = std::make_unique<QueryCommand>();
    q->endpoint = endpoint;
    CLI::App *cmd = app.add_subcommand(name, help);
    AddSourceFlags(cmd, q->sources);
    QueryCommand &ref = *q;
    queries.emplace_back(cmd, std::move(q));
    return std::pair<CLI::App *, QueryCommand *>(cmd, &ref);
  };
  const auto add_range = [&](CLI::App *cmd, QueryCommand &q) {
    AddParam(cmd, q, "--from", "from", "First year (default: corpus start)");
    AddParam(cmd, q, "--to", "to", "Last year (default: corpus end)");
  };

  std::vector<std::string> trend_terms;
  std::string trend_terms_file;
  {
    auto [cmd, q] = add_query("trend", "trend", "Keyword frequency per year");
    cmd->add_option("--terms", trend_terms, "Keywords, comma separated or repeated")
        ->delimiter(',');
    cmd->add_option("--terms-file", trend_terms_file, "File with one keyword per line");
    add_range(cmd, *q);
    AddParam(cmd, *q, "--mode", "mode", "df (documents) or tf (occurrences)");
  }
  {
    auto [cmd, q] = add_query("cooccur", "cooccur", "Documents containing both keywords");
    AddParam(cmd, *q, "--a", "a", "First keyword");
    AddParam(cmd, *q, "--b", "b", "Second keyword");
    add_range(cmd, *q);
  }
  {
    auto [cmd, q] = add_query("group-trend", "group-cooccur",
                              "Anchor entity co-mentions summed over a group or region");
    AddParam(cmd, *q, "--anchor", "anchor", "Anchor canonical name");
    AddParam(cmd, *q, "--group", "group", "Group name");
    AddParam(cmd, *q, "--region", "region", "Region of the group");
    add_range(cmd, *q);
  }
  {
    auto [cmd, q] = add_query("sentiment", "sentiment", "Lexicon word rates per year");
    AddParam(cmd, *q, "--view", "view", "percent or per-article");
    add_range(cmd, *q);
  }
  {
    auto [cmd, q] = add_query("entity-trend", "entity-trend",
                              "Documents mentioning an entity (or two) per year");
    AddParam(cmd, *q, "--entity", "entity", "Canonical name");
    AddParam(cmd, *q, "--with", "with", "Second canonical name for co-mentions");
    add_range(cmd, *q);
  }
  {
    auto [cmd, q] = add_query("external", "external", "External series, optionally as YoY %");
    AddParam(cmd, *q, "--name", "name", "Series name from the config");
    AddParam(cmd, *q, "--transform", "transform", "none or yoy");
  }
  {
    auto [cmd, q] = add_query("top", "top", "Most mentioned entities of a kind");
    AddParam(cmd, *q, "--kind", "kind", "country, company or person");
    AddParam(cmd, *q, "--k", "k", "Number of entries");
    add_range(cmd, *q);
  }
  {
    auto [cmd, q] = add_query("map-data", "map", "Map markers for the most mentioned countries");
    AddParam(cmd, *q, "--k", "k", "Number of markers");
    add_range(cmd, *q);
  }
  add_query("meta", "meta", "Corpus coverage and configured inputs");

  // serve
  SourceFlags serve_sources;
  std::string serve_bind, serve_cors;
  int serve_port = -1;
  CLI::App *serve = app.add_subcommand("serve", "Run the read-only HTTP query service");
  AddSourceFlags(serve, serve_sources);
  serve->add_option("--bind", serve_bind, "Listen address");
  serve->add_option("--port", serve_port, "Listen port");
  serve->add_option("--cors-origin", serve_cors, "Allowed browser origin");

  std::vector<const char *> argv{"chronoscope"};
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    if (args.empty()) {
      err << app.help();
    } else {
      app.exit(e, out, err);
    }
    return kExitUsage;
  }

  try {
    if (ingest->parsed()) {
      if (!col_authors.empty()) columns.authors = col_authors;
      if (!col_subjects.empty()) columns.subjects = col_subjects;
      std::ifstream in(ingest_input, std::ios::binary);
      if (!in) throw DataError("cannot read " + ingest_input);
      IngestResult result = IngestCsv(in, columns, ingest_out);
      json report = {{"schema_version", kSchemaVersion},
                     {"root", ingest_out},
                     {"rows", result.report.rows},
                     {"documents", result.report.documents},
                     {"tokens", result.report.tokens},
                     {"skipped", result.report.skipped}};
      report["skipped_rows"] = json::array();
      for (const SkippedRow &s : result.report.skipped_rows) {
        report["skipped_rows"].push_back({{"row", s.row}, {"reason", s.reason}});
      }
      Emit(report, ingest_format, out);
      return kExitOk;
    }
    if (synth->parsed()) {
      synth_options.vocabulary = kDefaultVocabulary;
      if (!synth_vocab.empty()) {
        std::ifstream in(synth_vocab);
        if (!in) throw DataError("cannot read " + synth_vocab);
        synth_options.vocabulary.clear();
        for (std::string line; std::getline(in, line);) {
          if (!Trim(line).empty()) synth_options.vocabulary.emplace_back(Trim(line));
        }
      }
      CorpusLayout layout = GenerateSynthetic(synth_options, synth_out);
      std::size_t tokens = 0;
      for (const ManifestEntry &e : layout.entries) tokens += e.token_count;
      Emit({{"schema_version", kSchemaVersion},
            {"root", synth_out},
            {"documents", layout.entries.size()},
            {"tokens", tokens}},
           synth_format, out);
      return kExitOk;
    }
    if (index->parsed()) {
      ServiceConfig config = ResolveConfig(index_sources);
      CorpusIndex built = BuildIndex(LoadCorpus(config.corpus), config.workers);
      json files = json::array();
      for (const fs::path &p : WriteIndex(built, index_out)) files.push_back(p.string());
      Emit({{"schema_version", kSchemaVersion},
            {"years", built.years().size()},
            {"documents", built.doc_count()},
            {"tokens", built.token_total()},
            {"files", files}},
           index_sources.format, out);
      return kExitOk;
    }
    if (serve->parsed()) {
      ServiceConfig config = ResolveConfig(serve_sources);
      if (!serve_bind.empty()) config.bind = serve_bind;
      if (serve_port >= 0) config.port = serve_port;
      if (!serve_cors.empty()) config.cors_origin = serve_cors;
      return RunServe(config, err);
    }
    for (auto &[cmd, q] : queries) {
      if (!cmd->parsed()) continue;
      if (q->endpoint == "trend") {
        std::vector<std::string> terms = trend_terms;
        if (!trend_terms_file.empty()) {
          std::ifstream in(trend_terms_file);
          if (!in) throw DataError("cannot read " + trend_terms_file);
          for (std::string line; std::getline(in, line);) {
            if (!Trim(line).empty()) terms.emplace_back(Trim(line));
          }
        }
        std::string joined;
        for (const std::string &t : terms) joined += (joined.empty() ? "" : ",") + t;
        if (!joined.empty()) q->params["terms"] = joined;
      }
      ServiceConfig config = ResolveConfig(q->sources);
      std::unique_ptr<QueryEngine> engine = QueryEngine::Load(config);
      Emit(RunQuery(*engine, q->endpoint, q->params), q->sources.format, out);
      return kExitOk;
    }
    err << app.help();
    return kExitUsage;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NotFoundError &e) {
    err << "error: " << e.what() << '\n';
    if (!e.candidates().empty()) {
      err << "did you mean:";
      for (const std::string &c : e.candidates()) err << ' ' << c << ';';
      err << '\n';
    }
    return kExitData;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace chronoscope
