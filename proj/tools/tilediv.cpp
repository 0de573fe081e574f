// Copyright 2026 The Authors.
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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "tilediv/cli.hpp"

namespace {

using tilediv::cli::Command;
using tilediv::cli::OutputFormat;
using tilediv::cli::RunConfig;

void add_fit_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tolerance", cfg.fit.tolerance,
                  "Maximum tile frequency residual of a fit")
      ->capture_default_str();
  app->add_option("--max-sweeps", cfg.fit.max_sweeps,
                  "Maximum iterative scaling sweeps")
      ->capture_default_str();
}

void add_background(CLI::App* app, RunConfig& cfg) {
  app->add_option("--background", cfg.background,
                  "none | density | columns | rows | columns+rows, or a "
                  "tile-set file")
      ->capture_default_str();
}

void add_output(CLI::App* app, RunConfig& cfg, bool with_format) {
  app->add_option("--output", cfg.output, "Write to this file instead of stdout");
  if (with_format) {
    const std::map<std::string, OutputFormat> formats{
        {"tsv", OutputFormat::kTsv}, {"jsonl", OutputFormat::kJsonl}};
    app->add_option("--format", cfg.format, "tsv | jsonl")
        ->transform(CLI::CheckedTransformer(formats));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare, redescribe and rank tile sets over binary data"};
  app.require_subcommand(1);
  RunConfig cfg;

  // convert
  auto* convert = app.add_subcommand("convert", "Turn mining results into tile sets");
  convert->require_subcommand(1);
  auto* itemsets = convert->add_subcommand(
      "itemsets", "One itemset (column ids) per line -> supporting-row tiles");
  itemsets->add_option("--data", cfg.data, "Dataset file")->required();
  itemsets->add_option("--input", cfg.input, "Itemset file")->required();
  add_output(itemsets, cfg, false);
  itemsets->callback([&] { cfg.command = Command::kConvertItemsets; });

  auto* clustering = convert->add_subcommand(
      "clustering", "\"row cluster\" pairs -> cluster tiles");
  clustering->add_option("--data", cfg.data, "Dataset file")->required();
  clustering->add_option("--input", cfg.input, "Clustering file")->required();
  const std::map<std::string, tilediv::ClusterTiles> modes{
      {"single-tile", tilediv::ClusterTiles::kSingleTile},
      {"per-column", tilediv::ClusterTiles::kPerColumn}};
  clustering->add_option("--mode", cfg.cluster_mode, "single-tile | per-column")
      ->transform(CLI::CheckedTransformer(modes));
  add_output(clustering, cfg, false);
  clustering->callback([&] { cfg.command = Command::kConvertClustering; });

  auto* margins = convert->add_subcommand("margins", "Column or row margin tiles");
  margins->add_option("--data", cfg.data, "Dataset file")->required();
  const std::map<std::string, tilediv::Axis> axes{
      {"columns", tilediv::Axis::kColumns}, {"rows", tilediv::Axis::kRows}};
  margins->add_option("--axis", cfg.axis, "columns | rows")
      ->transform(CLI::CheckedTransformer(axes));
  add_output(margins, cfg, false);
  margins->callback([&] { cfg.command = Command::kConvertMargins; });

  auto* density = convert->add_subcommand("density", "Single whole-data density tile");
  density->add_option("--data", cfg.data, "Dataset file")->required();
  add_output(density, cfg, false);
  density->callback([&] { cfg.command = Command::kConvertDensity; });

  // distance
  auto* dist = app.add_subcommand("distance", "Distance between two tile sets");
  dist->add_option("--data", cfg.data, "Dataset file (annotates tiles, sizes grid)");
  dist->add_option("--left", cfg.left, "Tile-set file")->required();
  dist->add_option("--right", cfg.right, "Tile-set file")->required();
  add_background(dist, cfg);
  add_fit_options(dist, cfg);
  add_output(dist, cfg, true);
  dist->callback([&] { cfg.command = Command::kDistance; });

  auto* matrix = app.add_subcommand("distance-matrix",
                                    "Pairwise distances between tile sets");
  matrix->add_option("--data", cfg.data, "Dataset file");
  matrix->add_option("files", cfg.tile_files, "Tile-set files")->required();
  add_background(matrix, cfg);
  add_fit_options(matrix, cfg);
  add_output(matrix, cfg, true);
  matrix->callback([&] { cfg.command = Command::kDistanceMatrix; });

  auto* redescribe = app.add_subcommand(
      "redescribe", "Greedily pick candidate tiles that best describe a target");
  redescribe->add_option("--data", cfg.data, "Dataset file");
  redescribe->add_option("--target", cfg.target, "Target tile-set file")->required();
  redescribe->add_option("--candidates", cfg.candidates, "Candidate tile-set file")
      ->required();
  add_background(redescribe, cfg);
  add_fit_options(redescribe, cfg);
  add_output(redescribe, cfg, false);
  redescribe->callback([&] { cfg.command = Command::kRedescribe; });

  auto* rank = app.add_subcommand("rank", "Order tiles by novel information");
  rank->add_option("--data", cfg.data, "Dataset file");
  rank->add_option("--tiles", cfg.tiles, "Tile-set file")->required();
  std::string rank_mode = "heuristic";
  rank->add_option("--mode", rank_mode, "exact | heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}))
      ->capture_default_str();
  add_background(rank, cfg);
  add_fit_options(rank, cfg);
  add_output(rank, cfg, false);
  rank->callback([&] {
    cfg.command = Command::kRank;
    cfg.rank_mode = rank_mode == "exact" ? tilediv::RankMode::kExact
                                         : tilediv::RankMode::kHeuristic;
  });

  auto* model = app.add_subcommand("model", "Inspect fitted models");
  model->require_subcommand(1);
  auto* dump = model->add_subcommand(
      "dump", "Print P[(i,j)=1] of the model for tiles + background as TSV");
  dump->add_option("--data", cfg.data, "Dataset file");
  dump->add_option("--tiles", cfg.tiles, "Tile-set file")->required();
  add_background(dump, cfg);
  add_fit_options(dump, cfg);
  add_output(dump, cfg, false);
  dump->callback([&] { cfg.command = Command::kModelDump; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tilediv::cli::kExitInputError;
  }
  return tilediv::cli::run(cfg, std::cout, std::cerr);
}
