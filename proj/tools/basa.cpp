// Copyright 2026 The Basa Authors.
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

// basa: readability features, classifiers and feature ranking for leveled
// Filipino texts.
//
//   basa synth    --out DIR [--preset default|synergy] [--per-level N]
//   basa extract  --manifest M [--out features.csv]
//   basa evaluate --features F [--model svm|lr] [--feature-set both] [--report R]
//   basa rank     --features F [--bins 10] [--top 10] [--out ranking.csv]
//   basa train    --features F [--model-type svm|lr] --model model.json
//   basa predict  --model model.json --features F

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "basa/commands.hpp"

namespace {

const std::map<std::string, basa::FeatureSet> kFeatureSets = {
    {"trad", basa::FeatureSet::kTrad},
    {"lex", basa::FeatureSet::kLex},
    {"both", basa::FeatureSet::kBoth}};

const std::map<std::string, basa::ModelType> kModelTypes = {
    {"lr", basa::ModelType::kLogistic}, {"svm", basa::ModelType::kSvm}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Readability features, classifiers and feature ranking for leveled texts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(basa::kToolVersion));

  basa::RunConfig config;
  std::string separator = "|";
  basa::FeatureSet feature_set = basa::FeatureSet::kBoth;
  bool f1_weighted = false;
  int per_level = 0;

  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "Seed for every random draw")->capture_default_str();
  };
  auto add_corpus = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", config.manifest, "Corpus manifest CSV (path,level,format)");
    cmd->add_option("--separator", separator, "Word/tag separator in tagged files")
        ->capture_default_str();
    cmd->add_option("--tagset", config.tagset, "Tagset mapping file (prefix=Category lines)");
    cmd->add_option("--lexicon", config.lexicon, "Fallback tagger lexicon (word=Category lines)");
    cmd->add_option("--k-sample", config.k_sample, "Sentences sampled for TTR and density")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threshold", config.polysyllabic_threshold,
                    "Polysyllabic words have more syllables than this")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };
  auto add_features_input = [&](CLI::App* cmd) {
    cmd->add_option("--features", config.features, "Features CSV written by extract");
    add_corpus(cmd);
  };
  auto add_feature_set = [&](CLI::App* cmd) {
    return cmd->add_option("--feature-set", feature_set, "trad, lex or both")
        ->transform(CLI::CheckedTransformer(kFeatureSets, CLI::ignore_case));
  };
  auto add_hyperparams = [&](CLI::App* cmd) {
    auto& hp = config.hyperparams;
    cmd->add_option("--lr", hp.learning_rate, "Logistic regression learning rate")
        ->capture_default_str();
    cmd->add_option("--max-iters", hp.max_iters, "Logistic regression iterations")
        ->capture_default_str();
    cmd->add_option("--tol", hp.tolerance, "Logistic regression loss-improvement tolerance")
        ->capture_default_str();
    cmd->add_option("--l2", hp.l2_lambda, "Logistic regression L2 strength")->capture_default_str();
    cmd->add_option("--svm-c", hp.svm_c, "SVM C")->capture_default_str();
    cmd->add_option("--svm-epochs", hp.svm_epochs, "SVM epochs")->capture_default_str();
  };
  auto add_model_type = [&](CLI::App* cmd, const std::string& flag) {
    cmd->add_option(flag, config.model_type, "lr or svm")
        ->transform(CLI::CheckedTransformer(kModelTypes, CLI::ignore_case));
  };

  auto* extract = app.add_subcommand("extract", "Extract the 15 features for every document");
  add_corpus(extract);
  extract->add_option("--out", config.out, "Output CSV (default stdout)");
  add_seed(extract);

  auto* evaluate = app.add_subcommand("evaluate", "Stratified k-fold cross-validation");
  add_features_input(evaluate);
  auto* evaluate_fs = add_feature_set(evaluate);
  add_model_type(evaluate, "--model,--model-type");
  evaluate->add_option("--folds", config.folds, "Number of folds")->capture_default_str();
  evaluate->add_option("--report", config.report, "Report JSON path");
  evaluate->add_option("--confusion-csv", config.confusion_csv, "Confusion matrix CSV path");
  evaluate->add_option("--profile-csv", config.profile_csv, "Polysyllabic profile CSV path");
  evaluate->add_flag("--weighted-f1", f1_weighted, "Print support-weighted instead of macro F1");
  add_hyperparams(evaluate);
  add_seed(evaluate);

  auto* rank = app.add_subcommand("rank", "Rank features by information gain and correlation");
  add_features_input(rank);
  auto* rank_fs = add_feature_set(rank);
  rank->add_option("--bins", config.bins, "Equal-frequency bins")->capture_default_str();
  rank->add_option("--top", config.top, "Entries to report")->capture_default_str();
  rank->add_option("--out", config.out, "Ranking CSV (default stdout)");
  add_seed(rank);

  auto* train = app.add_subcommand("train", "Train a model on all rows");
  add_features_input(train);
  auto* train_fs = add_feature_set(train);
  add_model_type(train, "--model-type");
  train->add_option("--model", config.model, "Model JSON output (default stdout)");
  add_hyperparams(train);
  add_seed(train);

  auto* predict = app.add_subcommand("predict", "Predict levels with a trained model");
  add_features_input(predict);
  auto* predict_fs = add_feature_set(predict);
  predict->add_option("--model", config.model, "Model JSON")->required();
  predict->add_option("--out", config.out, "Predictions file (default stdout)");
  add_seed(predict);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic leveled corpus");
  synth->add_option("--out", config.out, "Output directory")->required();
  synth->add_option("--preset", config.preset, "default or synergy")
      ->capture_default_str()
      ->check(CLI::IsMember({"default", "synergy"}));
  auto* per_level_opt = synth->add_option("--per-level", per_level, "Documents per level")
                            ->check(CLI::PositiveNumber);
  add_seed(synth);

  CLI11_PARSE(app, argc, argv);

  auto* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  if (separator.size() != 1) {
    std::cerr << "basa: --separator must be a single character\n";
    return 1;
  }
  config.separator = separator[0];
  config.weighted_f1 = f1_weighted;
  config.hyperparams.seed = config.seed;
  for (auto* opt : {evaluate_fs, rank_fs, train_fs, predict_fs}) {
    if (opt->count() > 0) config.feature_set = feature_set;
  }
  if (per_level_opt->count() > 0) config.per_level = per_level;

  return basa::run_command(config, std::cout, std::cerr);
}
