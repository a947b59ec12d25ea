// Copyright 2026 The Fallax Authors
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

// Deterministic generator for the bundled corpora. Writes data/logic.jsonl
// (single-label, 2,449 claims, 1849/300/300) and data/logicclimate.jsonl
// (multi-label, 1,079 claims, 680/219/180), steering sentence and token
// totals to the reference statistics the loaders are tested against.

#include <algorithm>
#include <array>
#include <cassert>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fallax/corpus.hpp"
#include "fallax/taxonomy.hpp"
#include "fallax/text.hpp"

using namespace fallax;
using nlohmann::json;

namespace {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  std::size_t pick(std::size_t n) { return next() % n; }
  template <typename T>
  const T& choose(const std::vector<T>& v) {
    return v[pick(v.size())];
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[pick(i)]);
  }
};

const std::vector<std::string> kNames = {
    "Alice", "Ben", "Carla", "Daniel", "Elena", "Felix", "Grace", "Henry",
    "Irene", "Jonas", "Karen", "Leo", "Maria", "Nathan", "Olivia", "Peter",
    "Quinn", "Rosa", "Samuel", "Teresa", "Umar", "Victor", "Wendy", "Xavier",
    "Yara", "Zane", "Arthur", "Bianca", "Carl", "Diana", "Edgar", "Fiona",
    "Gustav", "Hannah", "Ivan", "Julia", "Kevin", "Laura", "Marcus", "Nina",
    "Oscar", "Paula", "Ruben", "Sofia", "Tomas", "Ursula", "Vera", "Walter",
    "Alma", "Boris", "Clara", "David", "Edith", "Frank", "Greta", "Hugo",
    "Ines", "Jacob", "Katja", "Lukas", "Marta", "Noel", "Olga", "Pablo",
    "Rita", "Stefan", "Tara", "Valerie", "Wilma", "Yusuf", "Zelda", "Andre",
    "Bruno", "Celia", "Dora", "Emil", "Freya", "Gloria", "Hans", "Imogen"};

const std::vector<std::string> kPlaces = {
    "Canada", "Norway", "Denver", "Austin", "Portland", "Madrid", "Lisbon",
    "Vienna", "Prague", "Dublin", "Oslo", "Helsinki", "Warsaw", "Athens",
    "Rome", "Berlin", "Paris", "London", "Boston", "Chicago", "Seattle",
    "Toronto", "Melbourne", "Auckland", "Nairobi", "Cairo", "Lima", "Quito",
    "Havana", "Manila", "Hanoi", "Seoul", "Osaka", "Mumbai", "Delhi", "Lagos",
    "Accra", "Tunis", "Zurich", "Geneva", "Munich", "Hamburg", "Antwerp",
    "Ghent", "Leeds", "York", "Bristol", "Cardiff", "Glasgow", "Perth",
    "Adelaide", "Brisbane", "Calgary", "Ottawa", "Montreal", "Houston",
    "Dallas", "Phoenix", "Tucson", "Reno"};

const std::vector<std::string> kNouns = {
    "athlete", "teacher", "painter", "writer", "driver", "farmer", "lawyer",
    "doctor", "singer", "dancer", "builder", "banker", "sailor", "soldier",
    "student", "pilot", "critic", "judge", "mayor", "vendor", "barber",
    "tailor", "miner", "guard", "clerk", "referee", "gardener", "plumber",
    "engineer", "designer", "reporter", "editor", "director", "manager",
    "analyst", "broker", "trader", "courier", "waiter", "diver", "runner",
    "swimmer", "climber", "skater", "cyclist", "boxer", "golfer", "surfer",
    "juggler", "magician", "violinist", "drummer", "poet", "novelist",
    "sculptor", "architect", "chemist", "biologist", "historian", "geologist",
    "librarian", "curator", "translator", "mechanic", "welder", "carpenter",
    "locksmith", "florist", "butcher", "baker", "brewer", "printer", "weaver",
    "potter", "shepherd", "fisher", "planner", "scout", "ranger", "usher"};

const std::vector<std::string> kClimateNouns = {
    "scientist", "columnist", "forecaster", "economist", "farmer", "engineer",
    "minister", "analyst", "reporter", "professor", "geographer", "planner",
    "surveyor", "meteorologist", "statistician", "ecologist", "hydrologist",
    "botanist", "ranger", "mariner", "glaciologist", "agronomist", "chemist",
    "modeler", "auditor", "regulator", "insurer", "actuary", "broker",
    "diplomat", "senator", "governor", "researcher", "observer", "blogger",
    "editor", "curator", "archivist", "lobbyist", "campaigner"};

const std::vector<std::string> kAdjectives = {
    "good", "tall", "calm", "bold", "wise", "kind", "fast", "slow", "loud",
    "quiet", "brave", "clever", "honest", "gentle", "patient", "careful",
    "cheerful", "serious", "modest", "polite", "friendly", "generous",
    "reliable", "curious", "diligent", "earnest", "steady", "thrifty", "tidy",
    "witty", "agile", "alert", "ardent", "astute", "blunt", "breezy",
    "bright", "brisk", "candid", "capable", "cordial", "daring", "decent",
    "devoted", "eager", "fierce", "firm", "frank", "hardy", "hearty",
    "humble", "jolly", "keen", "lively", "loyal", "mellow", "mild", "nimble",
    "noble", "placid", "plucky", "prudent", "punctual", "quick", "robust",
    "rugged", "sturdy", "shrewd", "sincere", "skilled", "smooth", "sober",
    "solid", "spry", "stern", "stoic", "swift", "tactful", "tenacious",
    "tender", "tranquil", "upbeat", "valiant", "vivid", "warm", "watchful",
    "zealous", "ancient", "famous", "gifted", "graceful", "grand", "helpful",
    "vibrant", "sturdy", "youthful", "seasoned", "veteran", "senior",
    "junior", "leading", "notable", "eminent", "vocal", "prolific", "busy"};

const std::vector<std::string> kTopics = {
    "the new policy", "the tax plan", "the school budget",
    "the stadium project", "the housing bill", "the transit line",
    "the park renewal", "the festival plan", "the trade deal",
    "the health program", "the road repair", "the water project",
    "the library fund", "the energy plan", "the harbor upgrade",
    "the market reform", "the youth program", "the museum wing",
    "the bridge design", "the farm subsidy", "the rent cap",
    "the pension change", "the tourism drive", "the recycling rule",
    "the parking fee", "the curfew rule", "the zoning change",
    "the wage floor", "the export quota", "the lottery fund",
    "the airport plan", "the canal project", "the mining permit",
    "the forest plan", "the fishing quota", "the census drive",
    "the voting reform", "the charter school", "the night market",
    "the bike lane"};

const std::vector<std::string> kClimateTopics = {
    "the carbon tax", "the emissions target", "the glacier survey",
    "the sea level report", "the wind farm", "the solar mandate",
    "the coal phaseout", "the climate accord", "the flood barrier",
    "the heat record", "the ice core study", "the reef survey",
    "the methane estimate", "the forest offset", "the drought plan",
    "the storm model", "the ocean census", "the snowpack data",
    "the permafrost study", "the tide gauge record", "the weather archive",
    "the crop forecast", "the energy audit", "the grid upgrade",
    "the fuel standard", "the transit shift", "the retrofit fund",
    "the coastline map", "the rainfall series", "the satellite record",
    "the warming trend", "the climate model", "the carbon budget",
    "the adaptation fund", "the resilience plan", "the emission inventory",
    "the temperature index", "the gas pipeline", "the biomass plant",
    "the hydrogen pilot"};

const std::vector<std::string> kEvents = {
    "rain", "storm", "parade", "festival", "election", "harvest", "strike",
    "blackout", "flood", "frost", "auction", "concert", "derby", "regatta",
    "marathon", "carnival", "drought", "eclipse", "landslide", "recount",
    "rollout", "opening", "closure", "drill"};

const std::vector<std::string> kClimateEvents = {
    "heat wave", "cold snap", "flood", "drought", "wildfire", "hurricane",
    "landslide", "king tide", "dust storm", "ice storm", "monsoon",
    "blizzard", "mudslide", "heat record", "power outage", "crop failure",
    "algae bloom", "coral bleaching", "glacier retreat", "sea surge",
    "smoke plume", "water shortage", "beach erosion", "fish kill"};

struct Banks {
  const std::vector<std::string>* nouns;
  const std::vector<std::string>* topics;
  const std::vector<std::string>* events;
};

// Sentence templates per type: {open, middle, close}. The close sentence
// carries the fallacious step. {fillers} expands to zero or more padding
// adjectives so each claim can hit its token budget.
using TemplateSet = std::array<const char*, 3>;

TemplateSet templates_for(FallacyId id, bool climate) {
  switch (id) {
    case FallacyId::AdHominem:
      return climate
                 ? TemplateSet{
                       "{name} of {place} has argued for months that {topic} "
                       "deserves a {fillers} careful public hearing.",
                       "{name} also backed {topic2} before the {fillers} "
                       "council last winter.",
                       "Never mind the figures, because a {fillers} {noun} "
                       "who dresses like {name} cannot be right about "
                       "{topic}."}
                 : TemplateSet{
                       "{name} from {place} argues that {topic} deserves "
                       "{fillers} support.",
                       "{name} has defended {topic2} for many {fillers} "
                       "years.",
                       "Do not listen to {name}, because such a {fillers} "
                       "{noun} could never judge {topic}."};
    case FallacyId::AdPopulum:
      return climate
                 ? TemplateSet{
                       "A {fillers} survey across {place} polled thousands "
                       "of readers about {topic} last spring.",
                       "Nearly every {fillers} {noun} who answered sided "
                       "with the majority view.",
                       "Since most {fillers} households in {place} already "
                       "believe {topic} is sound, it simply must be sound."}
                 : TemplateSet{
                       "A {fillers} survey in {place} asked about {topic}.",
                       "Nearly every {fillers} {noun} in {place} agreed "
                       "with it.",
                       "Since most {fillers} people in {place} believe "
                       "{topic} is right, it must be right."};
    case FallacyId::AppealToEmotion:
      return climate
                 ? TemplateSet{
                       "{name} delivered a {fillers} tearful address about "
                       "{topic} to the assembly in {place}.",
                       "The address offered no {fillers} figures and cited "
                       "no study of {topic2}.",
                       "Picture the {fillers} children of {place} before "
                       "you even dare to question whether {topic} is "
                       "wrong."}
                 : TemplateSet{
                       "{name} gave a {fillers} speech about {topic} in "
                       "{place}.",
                       "The speech cited no {fillers} figures and named no "
                       "study.",
                       "Think of the {fillers} children before you even "
                       "question whether {topic} is wrong."};
    case FallacyId::CircularClaim:
      return climate
                 ? TemplateSet{
                       "{name} keeps calling {topic} the most {fillers} "
                       "trustworthy work to come out of {place}.",
                       "Readers keep pressing {name} for a {fillers} "
                       "reason to trust it.",
                       "{topic} is trustworthy because no {fillers} report "
                       "is more trustworthy than {topic}."}
                 : TemplateSet{
                       "{name} calls the {noun} from {place} the finest "
                       "{fillers} performer around.",
                       "People keep asking {name} for a {fillers} reason.",
                       "The {noun} is the finest because no {fillers} "
                       "rival is finer than the {noun}."};
    case FallacyId::DeductiveFallacy:
      return climate
                 ? TemplateSet{
                       "If {topic} were flawed, the {fillers} {noun} in "
                       "{place} would have objected by now.",
                       "The records from {place} show several {fillers} "
                       "objections were indeed filed.",
                       "Objections were filed, so {topic} must be flawed, "
                       "whatever the {fillers} data say."}
                 : TemplateSet{
                       "If the {noun} trains in {place}, the {noun} wins "
                       "{fillers} medals.",
                       "Records show the {noun} keeps winning {fillers} "
                       "medals.",
                       "The {noun} wins {fillers} medals, so the {noun} "
                       "must train in {place}."};
    case FallacyId::Equivocation:
      return climate
                 ? TemplateSet{
                       "{name} promised a {fillers} balanced account of "
                       "{topic} for the readers of {place}.",
                       "A balanced budget, {name} later joked, is any "
                       "{fillers} budget that balances on a desk.",
                       "Because the {fillers} ledger of {place} balanced, "
                       "the account of {topic} was balanced too."}
                 : TemplateSet{
                       "{name} promised a {fillers} fair review of "
                       "{topic}.",
                       "A fair day, {name} later said, is simply a "
                       "{fillers} sunny one.",
                       "Because the weather in {place} stayed {fillers} "
                       "fair, the review of {topic} was fair."};
    case FallacyId::FallacyOfCredibility:
      return climate
                 ? TemplateSet{
                       "{name} is a {fillers} decorated {noun} with prizes "
                       "from {place} and beyond.",
                       "{name} has lectured about {topic} on {fillers} "
                       "radio and television.",
                       "{name} says {topic} is settled, and so {fillers} "
                       "distinguished an authority must be right."}
                 : TemplateSet{
                       "{name} is a {fillers} {noun} with awards from "
                       "{place}.",
                       "{name} has spoken on {fillers} television about "
                       "{topic}.",
                       "{name} says {topic} is settled, and such a "
                       "{fillers} authority must be right."};
    case FallacyId::FallacyOfExtension:
      return climate
                 ? TemplateSet{
                       "{name} proposed a {fillers} modest revision to "
                       "{topic} at the {place} forum.",
                       "{name2} replied at length before the {fillers} "
                       "delegates.",
                       "{name2} now claims {name} wants to scrap every "
                       "{fillers} safeguard in {topic}, which would be "
                       "absurd."}
                 : TemplateSet{
                       "{name} suggested a {fillers} modest increase for "
                       "{topic}.",
                       "{name2} replied before the {fillers} crowd in "
                       "{place}.",
                       "{name2} claims {name} wants to waste every "
                       "{fillers} coin on {topic}, which would be absurd."};
    case FallacyId::FallacyOfRelevance:
      return climate
                 ? TemplateSet{
                       "The council of {place} spent a {fillers} week "
                       "weighing {topic} line by line.",
                       "{name} rose with a {fillers} grin just before the "
                       "vote.",
                       "Why fuss over {topic} when the {fillers} harbor of "
                       "{place} looks so calm this morning."}
                 : TemplateSet{
                       "The council of {place} debated {topic} for a "
                       "{fillers} week.",
                       "{name} stood up with a {fillers} smile near the "
                       "end.",
                       "Why worry about {topic} when the {fillers} weather "
                       "in {place} is so pleasant."};
    case FallacyId::FalseCausality:
      return climate
                 ? TemplateSet{
                       "The {event} reached {place} only days before the "
                       "{fillers} {event2} began.",
                       "{name} charted the {fillers} timing in a widely "
                       "shared post.",
                       "Therefore the {event} must have caused the "
                       "{fillers} {event2}, whatever the models claim."}
                 : TemplateSet{
                       "The {event} arrived in {place} just before the "
                       "{fillers} {event2}.",
                       "{name} noticed the {fillers} timing at once.",
                       "Therefore the {event} must have caused the "
                       "{fillers} {event2}."};
    case FallacyId::FalseDilemma:
      return climate
                 ? TemplateSet{
                       "The region around {place} faces a {fillers} "
                       "decision about {topic} this year.",
                       "{name} framed the question for the {fillers} "
                       "cameras.",
                       "Either {place} adopts {topic} in full, or every "
                       "{fillers} {noun} here has given up on the coast."}
                 : TemplateSet{
                       "The town of {place} faces a {fillers} choice about "
                       "{topic}.",
                       "{name} framed the question at the {fillers} "
                       "assembly.",
                       "Either {place} accepts {topic} completely, or "
                       "every {fillers} {noun} here is against progress."};
    case FallacyId::FaultyGeneralization:
      return climate
                 ? TemplateSet{
                       "One {fillers} station near {place} logged a cool "
                       "week while {topic} was in the news.",
                       "A single {fillers} {noun} repeated the reading on "
                       "air.",
                       "Therefore, all the {fillers} findings behind "
                       "{topic} must be mistaken everywhere."}
                 : TemplateSet{
                       "{name} from {place} is a {fillers} {adj} {noun}.",
                       "{name} trains with a {fillers} team near {place}.",
                       "Therefore, all {fillers} {noun}s from {place} are "
                       "{adj}."};
    case FallacyId::IntentionalFallacy:
      return climate
                 ? TemplateSet{
                       "{name} asked whether anyone in {place} kept "
                       "{fillers} minutes disproving {topic}.",
                       "No {fillers} archive in {place} settles the point "
                       "either way.",
                       "No one has ever disproven {topic}, so the "
                       "{fillers} claim must be correct."}
                 : TemplateSet{
                       "{name} asked whether anyone had {fillers} proof "
                       "about {topic}.",
                       "Nobody in {place} offered a {fillers} study either "
                       "way.",
                       "No one has ever proven {topic} wrong, so the "
                       "{fillers} claim must be correct."};
  }
  return {"", "", ""};
}

std::string replace_all(std::string s, const std::string& key,
                        const std::string& value) {
  std::size_t pos = 0;
  while ((pos = s.find(key, pos)) != std::string::npos) {
    s.replace(pos, key.size(), value);
    pos += value.size();
  }
  return s;
}

std::string tidy_spaces(std::string s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out.push_back(c);
  }
  // "{fillers}" next to punctuation can leave a stray space.
  std::size_t pos;
  while ((pos = out.find(" .")) != std::string::npos) out.erase(pos, 1);
  while ((pos = out.find(" ,")) != std::string::npos) out.erase(pos, 1);
  if (!out.empty() && out.front() == ' ') out.erase(0, 1);
  return out;
}

std::size_t count_tokens(const std::string& text) {
  return tokenize(text).size();
}

struct ClaimPlan {
  std::set<FallacyId> labels;
  FallacyId primary{};
  int n_sentences = 2;
  std::size_t token_target = 0;
  Split split = Split::Train;
};

std::string generate_claim(const ClaimPlan& plan, Rng& rng, const Banks& banks,
                           bool climate) {
  const TemplateSet tmpl = templates_for(plan.primary, climate);
  std::vector<std::string> chosen;
  if (plan.n_sentences == 1) {
    chosen = {tmpl[2]};
  } else if (plan.n_sentences == 2) {
    chosen = {tmpl[0], tmpl[2]};
  } else {
    chosen = {tmpl[0], tmpl[1], tmpl[2]};
  }

  // One binding per claim so repeated slots repeat their surface form.
  std::map<std::string, std::string> binding;
  binding["{name}"] = rng.choose(kNames);
  binding["{name2}"] = rng.choose(kNames);
  binding["{place}"] = rng.choose(kPlaces);
  binding["{noun}"] = rng.choose(*banks.nouns);
  binding["{adj}"] = rng.choose(kAdjectives);
  binding["{topic}"] = rng.choose(*banks.topics);
  binding["{topic2}"] = rng.choose(*banks.topics);
  binding["{event}"] = rng.choose(*banks.events);
  binding["{event2}"] = rng.choose(*banks.events);
  while (binding["{name2}"] == binding["{name}"])
    binding["{name2}"] = rng.choose(kNames);
  while (binding["{event2}"] == binding["{event}"])
    binding["{event2}"] = rng.choose(*banks.events);
  while (binding["{topic2}"] == binding["{topic}"])
    binding["{topic2}"] = rng.choose(*banks.topics);

  std::vector<std::string> sentences;
  for (const auto& t : chosen) {
    std::string s = t;
    for (const auto& [key, value] : binding) s = replace_all(s, key, value);
    sentences.push_back(s);
  }

  auto render = [&sentences](const std::vector<std::vector<std::string>>&
                                 fillers) {
    std::string text;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      std::string padding;
      for (const auto& w : fillers[i]) {
        if (!padding.empty()) padding += ' ';
        padding += w;
      }
      std::string s = replace_all(sentences[i], "{fillers}", padding);
      if (i) text += ' ';
      text += tidy_spaces(s);
    }
    return text;
  };

  std::vector<std::vector<std::string>> fillers(sentences.size());
  std::string text = render(fillers);
  std::size_t tokens = count_tokens(text);
  std::size_t next_sentence = 0;
  while (tokens < plan.token_target) {
    auto& slot = fillers[next_sentence % sentences.size()];
    ++next_sentence;
    const std::string& w = rng.choose(kAdjectives);
    if (std::find(slot.begin(), slot.end(), w) != slot.end()) continue;
    slot.push_back(w);
    ++tokens;  // one padding adjective is exactly one token
  }
  text = render(fillers);
  assert(count_tokens(text) == tokens);
  return text;
}

struct SplitTargets {
  std::size_t samples;
  std::size_t sentences;
  std::size_t tokens;
};

struct DatasetSpec {
  std::string name;
  bool climate;
  std::array<SplitTargets, 3> splits;  // train, dev, test
  std::map<FallacyId, std::size_t> label_counts;
  std::size_t double_labeled;  // claims carrying two labels
  std::uint64_t seed;
  std::string source_prefix;
};

std::vector<json> generate_dataset(const DatasetSpec& spec) {
  Rng rng(spec.seed);
  const Banks banks = spec.climate
                          ? Banks{&kClimateNouns, &kClimateTopics,
                                  &kClimateEvents}
                          : Banks{&kNouns, &kTopics, &kEvents};

  std::size_t total = 0;
  for (const auto& s : spec.splits) total += s.samples;

  // Label pool: each label repeated by its global count, then shuffled.
  std::vector<FallacyId> pool;
  for (const auto& [id, count] : spec.label_counts)
    pool.insert(pool.end(), count, id);
  rng.shuffle(pool);
  assert(pool.size() == total + spec.double_labeled);

  // Which claims carry a second label.
  std::vector<std::size_t> claim_order(total);
  std::iota(claim_order.begin(), claim_order.end(), std::size_t{0});
  rng.shuffle(claim_order);
  std::set<std::size_t> doubled(claim_order.begin(),
                                claim_order.begin() +
                                    static_cast<std::ptrdiff_t>(
                                        spec.double_labeled));

  std::vector<std::set<FallacyId>> labels(total);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < total; ++i) {
    labels[i].insert(pool[cursor++]);
    if (doubled.count(i)) {
      // Second label must differ; swap forward until it does.
      std::size_t probe = cursor;
      while (probe < pool.size() && labels[i].count(pool[probe])) ++probe;
      if (probe < pool.size()) {
        std::swap(pool[cursor], pool[probe]);
        labels[i].insert(pool[cursor++]);
      }
    }
  }

  std::vector<json> records;
  records.reserve(total);
  std::set<std::string> seen_texts;
  std::size_t claim_index = 0;
  std::size_t source_counter = 0;

  for (std::size_t split_idx = 0; split_idx < 3; ++split_idx) {
    const SplitTargets& target = spec.splits[split_idx];
    const Split split = static_cast<Split>(split_idx);

    // Sentence plan: base count per claim plus spread adjustments.
    std::vector<int> sentence_plan(target.samples, 2);
    const std::size_t base = 2 * target.samples;
    if (target.sentences >= base) {
      for (std::size_t i = 0; i < target.sentences - base; ++i)
        sentence_plan[i] = 3;
    } else {
      for (std::size_t i = 0; i < base - target.sentences; ++i)
        sentence_plan[i] = 1;
    }
    if (spec.climate) {
      // Climate claims are mostly single sentences.
      std::fill(sentence_plan.begin(), sentence_plan.end(), 1);
      for (std::size_t i = 0; i < target.sentences - target.samples; ++i)
        sentence_plan[i] = 2;
    }
    rng.shuffle(sentence_plan);

    std::size_t remaining_tokens = target.tokens;
    std::size_t remaining_sentences = target.sentences;

    for (std::size_t i = 0; i < target.samples; ++i, ++claim_index) {
      ClaimPlan plan;
      plan.labels = labels[claim_index];
      plan.primary = *plan.labels.begin();
      plan.n_sentences = sentence_plan[i];
      plan.split = split;
      plan.token_target =
          remaining_sentences
              ? (remaining_tokens * static_cast<std::size_t>(plan.n_sentences) +
                 remaining_sentences / 2) /
                    remaining_sentences
              : 0;

      std::string text = generate_claim(plan, rng, banks, spec.climate);
      int retries = 0;
      while (seen_texts.count(text) && retries++ < 50)
        text = generate_claim(plan, rng, banks, spec.climate);
      seen_texts.insert(text);

      const std::size_t tokens = count_tokens(text);
      remaining_tokens -= std::min(remaining_tokens, tokens);
      remaining_sentences -=
          std::min(remaining_sentences,
                   static_cast<std::size_t>(plan.n_sentences));

      json rec;
      rec["text"] = text;
      json label_array = json::array();
      for (FallacyId id : plan.labels) label_array.push_back(id_string(id));
      rec["labels"] = label_array;
      rec["split"] = split_name(split);
      rec["source"] =
          spec.source_prefix + std::to_string(1000 + source_counter++);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

void write_records(const std::vector<json>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(1);
  }
  for (const auto& rec : records) out << rec.dump() << '\n';
}

void report(const std::string& path, Schema schema) {
  Dataset ds = load_dataset(path, schema);
  const auto sizes = ds.split_sizes();
  std::cout << path << ": " << ds.size() << " claims (" << sizes[0] << "/"
            << sizes[1] << "/" << sizes[2] << ")\n";
  const char* names[] = {"train", "dev", "test"};
  for (int s = 0; s < 3; ++s) {
    const CorpusStats st = compute_stats(ds, static_cast<Split>(s));
    std::cout << "  " << names[s] << ": sents " << st.n_sentences
              << ", tokens " << st.n_tokens << ", vocab " << st.vocab_size
              << "\n";
  }
  const CorpusStats st = compute_stats(ds);
  std::cout << "  total: sents " << st.n_sentences << ", tokens "
            << st.n_tokens << ", vocab " << st.vocab_size << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_dir = argc > 1 ? argv[1] : "data";

  // Single-label corpus: 2,449 claims, 1849/300/300, with the class
  // distribution the loaders and baselines are tested against.
  DatasetSpec logic;
  logic.name = "logic";
  logic.climate = false;
  logic.splits = {SplitTargets{1849, 3687, 53475}, SplitTargets{300, 638, 8690},
                  SplitTargets{300, 609, 8895}};
  logic.label_counts = {
      {FallacyId::FaultyGeneralization, 441},
      {FallacyId::AdHominem, 302},
      {FallacyId::AdPopulum, 232},
      {FallacyId::FalseCausality, 216},
      {FallacyId::CircularClaim, 171},
      {FallacyId::AppealToEmotion, 167},
      {FallacyId::FallacyOfRelevance, 162},
      {FallacyId::DeductiveFallacy, 152},
      {FallacyId::IntentionalFallacy, 143},
      {FallacyId::FallacyOfExtension, 141},
      {FallacyId::FalseDilemma, 141},
      {FallacyId::FallacyOfCredibility, 132},
      {FallacyId::Equivocation, 49},
  };
  logic.double_labeled = 0;
  logic.seed = 20260811;
  logic.source_prefix = "https://quiz.example/fallacies/q";

  // Multi-label challenge corpus: 1,079 claims, 680/219/180; 30 claims
  // carry a second label.
  DatasetSpec climate;
  climate.name = "logicclimate";
  climate.climate = true;
  climate.splits = {SplitTargets{680, 891, 24814}, SplitTargets{219, 331, 8419},
                    SplitTargets{180, 241, 5595}};
  climate.label_counts = {
      {FallacyId::IntentionalFallacy, 283},
      {FallacyId::AppealToEmotion, 126},
      {FallacyId::FaultyGeneralization, 113},
      {FallacyId::FallacyOfCredibility, 110},
      {FallacyId::AdHominem, 87},
      {FallacyId::FallacyOfRelevance, 86},
      {FallacyId::DeductiveFallacy, 72},
      {FallacyId::FalseCausality, 56},
      {FallacyId::FallacyOfExtension, 54},
      {FallacyId::AdPopulum, 51},
      {FallacyId::FalseDilemma, 42},
      {FallacyId::Equivocation, 22},
      {FallacyId::CircularClaim, 7},
  };
  climate.double_labeled = 30;
  climate.seed = 20260812;
  climate.source_prefix = "https://climatefeedback.example/article/";

  write_records(generate_dataset(logic), out_dir + "/logic.jsonl");
  write_records(generate_dataset(climate), out_dir + "/logicclimate.jsonl");

  report(out_dir + "/logic.jsonl", Schema::SingleLabel);
  report(out_dir + "/logicclimate.jsonl", Schema::MultiLabel);
  return 0;
}
