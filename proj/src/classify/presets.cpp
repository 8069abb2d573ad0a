#include "policystory/classify/presets.hpp"

namespace policystory::classify {

namespace {

// Descriptions double as keyword lists for the mock backend, so they avoid
// words that would pull unrelated articles in (no "allocation", "scheme",
// "support" and the like in early topics).
corpus::TopicTaxonomy union_budget_taxonomy() {
  corpus::TopicTaxonomy t;
  t.topics = {
      {"taxation", "Taxation",
       "Income tax slabs and deductions, GST, customs and excise duty."},
      {"defense", "Defense",
       "Armed forces, defence modernisation, military hardware and procurement."},
      {"agriculture-rural", "Agriculture & Rural",
       "Farm credit, crops, irrigation, rural jobs under MGNREGA, fisheries and dairy."},
      {"infrastructure-capex", "Infrastructure & Capex",
       "Capital expenditure on roads, railways, ports, airports and urban housing."},
      {"health-education", "Health & Education",
       "Hospitals, health insurance, schools, universities and skilling."},
      {"welfare-subsidies", "Welfare & Subsidies",
       "Food, fertiliser and fuel subsidies, pensions and cash transfers to the poor."},
      {"fiscal-policy-deficit", "Fiscal Policy & Deficit",
       "The fiscal deficit, borrowing, debt and fiscal consolidation."},
      {"markets-industry-reaction", "Markets & Industry Reaction",
       "Stock market and Sensex moves, investor sentiment, industry chambers and analysts."},
      {kFallbackTopicId, "Unclassified", "Articles that fit none of the topics above."},
  };
  t.fallback_topic_id = kFallbackTopicId;
  return t;
}

corpus::TopicTaxonomy farmers_protests_taxonomy() {
  corpus::TopicTaxonomy t;
  t.topics = {
      {"laws-legal-process", "Laws & Legal Process",
       "Ordinances, parliamentary passage, Supreme Court hearings, the expert committee and "
       "repeal of the legislation."},
      {"protest-actions-mobilization", "Protest Actions & Mobilization",
       "Sit-ins at the Delhi borders, tractor rallies, rail blockades and Bharat Bandh calls."},
      {"government-response-negotiations", "Government Response & Negotiations",
       "Rounds of talks with ministers, offers to suspend, police action and barricades."},
      {"msp-economic-demands", "MSP & Economic Demands",
       "Minimum support price guarantees, procurement, mandi trade and farm incomes."},
      {"public-political-reactions", "Public & Political Reactions",
       "Opposition parties, state governments, celebrities and the diaspora."},
      {kFallbackTopicId, "Unclassified", "Articles that fit none of the topics above."},
  };
  t.fallback_topic_id = kFallbackTopicId;
  return t;
}

}  // namespace

std::optional<corpus::TopicTaxonomy> preset_taxonomy(std::string_view event_id) {
  if (event_id == "union-budget") return union_budget_taxonomy();
  if (event_id == "farmers-protests") return farmers_protests_taxonomy();
  return std::nullopt;
}

std::optional<corpus::PolicyEvent> preset_event(std::string_view event_id) {
  corpus::PolicyEvent e;
  if (event_id == "union-budget") {
    e.event_id = "union-budget";
    e.name = "Union Budget";
    e.query.required_terms = {"budget"};
    e.query.alternative_groups = {{"finance minister", "union budget", "fiscal policy",
                                   "tax reforms", "Nirmala", "budget speech",
                                   "budget allocation", "fiscal deficit"}};
    e.date_window = {Date::parse("2019-01-01"), Date::parse("2024-12-31")};
    e.taxonomy = union_budget_taxonomy();
    return e;
  }
  if (event_id == "farmers-protests") {
    e.event_id = "farmers-protests";
    e.name = "Farmers' Protests";
    e.query.required_terms = {"farmers"};
    e.query.alternative_groups = {
        {"protest", "agitation", "farm laws", "MSP", "march to Delhi"}};
    e.date_window = {Date::parse("2020-08-01"), Date::parse("2024-12-31")};
    e.taxonomy = farmers_protests_taxonomy();
    return e;
  }
  return std::nullopt;
}

std::vector<std::string> preset_ids() { return {"farmers-protests", "union-budget"}; }

}  // namespace policystory::classify
