#!/usr/bin/env python3
"""Writes the mini corpus: recorded search pages and article HTML under
fixtures/mini, and the run config fixtures/mini.toml. Output is a pure function of this file, so re-running it
reproduces the committed fixtures byte for byte."""

import hashlib
import html
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "mini"

OUTLETS = [
    ("dailyledger.example.in", "The Daily Ledger"),
    ("northernherald.example.in", "Northern Herald"),
    ("markettimes.example.in", "Market Times"),
    ("agrarianpost.example.in", "Agrarian Post"),
]
AUTHORS = ["Meera Iyer", "Arjun Bose", "Kavita Rao", "Sanjay Menon", "Farah Qureshi", "Vikram Nair"]

# (date, intended topic, title, lead paragraph, further paragraphs)
# Titles and leads are written so the mock classifier (first topic whose
# label or description keyword appears) lands on the intended topic; the
# later paragraphs are free text.
BUDGET = [
    ("2022-01-24", "taxation", "Salaried class seeks relief in income tax slabs",
     "Ahead of the Union Budget, salaried taxpayers are pressing for wider income tax slabs and a higher standard deduction.",
     ["Tax advisers said the standard deduction of INR 50,000 has not kept pace with prices. Industry groups have also asked for simpler rules on capital gains. The finance ministry is expected to keep changes modest because revenue is still recovering."]),
    ("2022-02-01", "taxation", "Budget 2022 keeps income tax slabs unchanged, adds updated return",
     "Finance Minister Nirmala Sitharaman left personal income tax slabs untouched on Tuesday and introduced an updated return that lets taxpayers fix mistakes within two years.",
     ["The updated return carries an additional tax of 25 to 50 per cent of the tax due. A 30 per cent levy on income from virtual digital assets was also announced. GST collections crossed INR 1.4 lakh crore in January, the highest since the tax was introduced.",
      "Officials described the budget as a continuity document. Opposition leaders said the middle class had been ignored."]),
    ("2022-02-01", "defense", "Defence outlay rises to INR 5.25 lakh crore",
     "The defence ministry received INR 5.25 lakh crore in the budget for 2022-23, with a larger share reserved for domestic industry.",
     ["The defense budget of INR 5.25 lakh crore includes pensions. About 68 per cent of the capital procurement budget is earmarked for local manufacturers. Analysts said the increase barely keeps pace with inflation."]),
    ("2022-02-02", "agriculture-rural", "Farm credit target raised, drones for crop assessment",
     "The budget raised the farm credit target and promised drones to assess crops and spray nutrients across villages.",
     ["Agriculture credit is set at INR 18 lakh crore for the year. The government will promote natural farming along the Ganga corridor. Procurement of wheat and paddy is expected to reach 1,208 lakh metric tonnes."]),
    ("2022-02-03", "infrastructure-capex", "Capital expenditure jumps 35% to INR 7.5 lakh crore",
     "Public capital expenditure will rise by 35 per cent to INR 7.5 lakh crore as the Centre bets on roads and railways to drive growth.",
     ["The PM Gati Shakti master plan will cover expressways, ports and mass transport. Another 400 Vande Bharat trains are planned over three years. Economists said the multiplier effect of capital expenditure is larger than that of revenue spending."]),
    ("2022-02-05", "health-education", "Digital university and mental health programme announced",
     "A digital university and a national tele-mental health programme were the main education and health announcements this year.",
     ["The digital university will offer courses in several Indian languages. One class, one TV channel will be expanded to 200 channels to help children who lost learning during school closures. Experts welcomed the focus but said state capacity is uneven."]),
    ("2022-02-08", "welfare-subsidies", "Food and fertiliser subsidies trimmed after pandemic peak",
     "Food and fertiliser subsidies were cut sharply in the revised numbers as pandemic-era free grain distribution wound down.",
     ["The food subsidy bill is estimated at INR 2.07 lakh crore for 2022-23. Fertiliser support falls to INR 1.05 lakh crore. Economists warned that a spike in global gas prices could push the bill up again."]),
    ("2022-02-10", "fiscal-policy-deficit", "Fiscal deficit target set at 6.4% of GDP",
     "The Centre has set a fiscal deficit target of 6.4 per cent of GDP for 2022-23 and plans record gross borrowing.",
     ["Gross market borrowing is budgeted at INR 14.95 lakh crore. The government reaffirmed its aim of bringing the deficit below 4.5 per cent by 2025-26. Bond yields rose after the announcement."]),
    ("2022-02-02", "markets-industry-reaction", "Sensex gains 848 points as investors cheer budget",
     "The Sensex closed 848 points higher on budget day as investors welcomed the absence of new levies on equity gains.",
     ["Infrastructure and cement stocks led the rally. Brokerages said the budget was growth-oriented and fiscally credible. Foreign investors were net buyers for the first time in a month."]),
    ("2022-01-20", "unclassified", "Halwa ceremony marks start of document printing",
     "The traditional halwa ceremony was held in North Block on Thursday, marking the final stage before the documents go to print.",
     ["Officials involved in preparing the documents stay inside the building until the speech is delivered. This year most documents will be published in electronic form only. The ceremony was scaled down because of pandemic rules."]),
    ("2022-07-15", "fiscal-policy-deficit", "Deficit on track despite higher borrowing costs",
     "Mid-year numbers show the fiscal deficit on track even as borrowing costs climb with rising interest rates.",
     ["The deficit for April to June stood at 21 per cent of the annual target. Tax buoyancy has offset higher spending on fertiliser and food. Rating agencies said consolidation remains credible."]),
    ("2023-01-25", "taxation", "New income tax regime to become default, say officials",
     "The new income tax regime is likely to become the default option, officials said ahead of the budget.",
     ["Taxpayers would still be able to opt for the old regime with its exemptions. The change is meant to simplify filing for young earners. Advisers said the move nudges people away from tax-saving investments."]),
    ("2023-02-01", "taxation", "Rebate raised to INR 7 lakh under new tax regime",
     "Income up to INR 7 lakh will attract no tax under the new regime after the rebate limit was raised on Wednesday.",
     ["The number of slabs was cut to five. The highest surcharge rate falls from 37 to 25 per cent. The government estimates revenue forgone at about INR 35,000 crore."]),
    ("2023-02-01", "defense", "Defence allocation up, capital expenditure push",
     "The defense budget of INR 5.94 lakh crore announced on February 1 is the largest ever, with a sharper push on new weapons.",
     ["The capital outlay for modernisation is INR 1.62 lakh crore. A new category of funding was created for startups building drones and electronics. Analysts noted that pensions still take a quarter of the total."]),
    ("2023-02-02", "agriculture-rural", "Agriculture accelerator fund for rural start-ups",
     "An agriculture accelerator fund will back rural start-ups, and the farm credit target rises to INR 20 lakh crore.",
     ["Millets were promoted under the name Shree Anna. A new cooperative push aims to set up storage across panchayats. Experts said the measures are incremental rather than transformative."]),
    ("2023-02-03", "infrastructure-capex", "Capex raised 33% to INR 10 lakh crore",
     "Capital expenditure goes up 33 per cent to INR 10 lakh crore, about 3.3 per cent of GDP, with railways getting a record share.",
     ["The railways receive INR 2.4 lakh crore. One hundred transport projects for ports, coal and steel were identified. Economists said state governments will get interest-free loans for another year."]),
    ("2023-02-05", "health-education", "157 new nursing colleges to be set up",
     "Health and education announcements include 157 new nursing colleges and a national digital library for children.",
     ["The nursing colleges will be co-located with existing medical colleges. A mission to eliminate sickle cell anaemia by 2047 was launched. Teachers' training will be overhauled through district institutes."]),
    ("2023-02-06", "welfare-subsidies", "Free grain scheme merged, food subsidy at INR 1.97 lakh crore",
     "The food subsidy is budgeted at INR 1.97 lakh crore after free grain distribution was merged into the main food law.",
     ["Some 81 crore people will receive free grain for one year. Fertiliser support is set at INR 1.75 lakh crore. Economists said the targeting has improved with digital ration cards."]),
    ("2023-02-08", "fiscal-policy-deficit", "Fiscal deficit seen at 5.9% of GDP in 2023-24",
     "The fiscal deficit is projected at 5.9 per cent of GDP next year, down from 6.4 per cent, keeping the glide path intact.",
     ["Net market borrowing is pegged at INR 11.8 lakh crore. The government repeated its goal of 4.5 per cent by 2025-26. Bond markets reacted calmly."]),
    ("2023-02-01", "markets-industry-reaction", "Sensex swings 1,700 points on budget day",
     "The Sensex swung sharply through the session and ended flat as investors weighed a higher securities transaction levy on options.",
     ["Banking stocks fell while capital goods makers gained. Industry chambers praised the continued spending on roads and rail. Analysts expect markets to refocus on corporate earnings."]),
    ("2023-03-10", "defense", "Parliament panel flags gaps in military procurement",
     "A parliamentary panel said military procurement delays could blunt the impact of the record defence budget.",
     ["The committee noted unspent funds in earlier years. It recommended quicker trials for equipment made in India. Former officers said reform of the acquisition process is overdue."]),
    ("2023-07-20", "agriculture-rural", "Kharif sowing data boosts farm output hopes",
     "Sowing data for kharif crops show acreage ahead of last year, lifting hopes for farm output after budget support for irrigation.",
     ["Rice acreage rose about 6 per cent. Pulses lagged because of a late monsoon in parts of the south. Economists said rural demand could recover in the second half of the year."]),
    ("2024-01-28", "taxation", "No big income tax changes expected in interim budget",
     "Economists do not expect big income tax changes in the interim budget to be presented before the general election.",
     ["By convention the interim budget avoids major policy announcements. Taxpayers hope for a higher standard deduction in the full budget later in the year. The finance ministry has signalled restraint."]),
    ("2024-02-01", "defense", "Interim budget puts defence at INR 6.21 lakh crore",
     "The interim budget allocated INR 6.21 lakh crore to the defence ministry, the largest share among ministries.",
     ["The defense budget of INR 6.21 lakh crore is about 13 per cent of total spending. Capital outlay for the armed forces rises to INR 1.72 lakh crore. A new scheme will fund deep-tech research for the military."]),
    ("2024-02-01", "fiscal-policy-deficit", "Interim budget pegs fiscal deficit at 5.1%",
     "The interim budget pegged the fiscal deficit at 5.1 per cent of GDP for 2024-25, better than markets had expected.",
     ["Gross borrowing is budgeted at INR 14.13 lakh crore. The revised estimate for the current year is 5.8 per cent. Bond yields fell on the news."]),
    ("2024-02-02", "infrastructure-capex", "Capex raised 11% to INR 11.11 lakh crore",
     "Capital expenditure in the interim budget rises 11 per cent to INR 11.11 lakh crore, with three new railway corridors.",
     ["The corridors cover energy, minerals and cement, port connectivity and high-traffic density routes. Forty thousand rail coaches will be upgraded. Airports will continue to expand under regional connectivity plans."]),
    ("2024-02-03", "welfare-subsidies", "Rooftop solar plan to give free power to one crore homes",
     "Cash transfers and subsidies stay broadly unchanged, while a rooftop solar plan will give free power to one crore households.",
     ["Households can save INR 15,000 to INR 18,000 a year under the solar plan. Food subsidy is set at INR 2.05 lakh crore. Experts said welfare spending was held steady before the election."]),
    ("2024-07-23", "taxation", "Standard deduction raised to INR 75,000 in full budget",
     "The full budget raised the standard deduction to INR 75,000 under the new regime and revised income tax slabs.",
     ["Long-term capital gains tax rises to 12.5 per cent. The angel tax was abolished for all classes of investors. The government expects most taxpayers to move to the new regime."]),
    ("2024-07-23", "defense", "Defence gets INR 6.22 lakh crore in full budget",
     "The full budget kept defence spending at INR 6.22 lakh crore, nearly unchanged from the interim plan.",
     ["The defense budget of INR 6.22 lakh crore includes INR 1.72 lakh crore for capital acquisition. Border roads get a larger share. Analysts said the priority is self-reliance in military production."]),
    ("2024-07-24", "agriculture-rural", "Agriculture gets INR 1.52 lakh crore, focus on climate-resilient seeds",
     "Agriculture and allied sectors receive INR 1.52 lakh crore, with 109 new climate-resilient varieties of crops to be released.",
     ["One crore farmers will be introduced to natural farming over two years. A digital crop survey will cover 400 districts. Experts said storage and marketing remain weak links."]),
    ("2024-07-24", "health-education", "INR 1.48 lakh crore for education, employment and skilling",
     "The budget set aside INR 1.48 lakh crore for education, employment and skilling, including internships in top companies.",
     ["One crore young people will get internships over five years. Loans for higher education up to INR 10 lakh will get interest support. Critics said the scheme depends on company participation."]),
    ("2024-07-25", "fiscal-policy-deficit", "Fiscal deficit target lowered to 4.9%",
     "The fiscal deficit target for 2024-25 has been lowered to 4.9 per cent of GDP on the back of a large central bank dividend.",
     ["The government will target a declining debt ratio from 2026-27. Net borrowing is INR 11.63 lakh crore. Rating agencies called the path credible."]),
    ("2024-07-23", "markets-industry-reaction", "Sensex falls after levy on equity gains rises",
     "The Sensex fell more than 1,200 points intraday after the budget raised the levy on long-term equity gains, before recovering some losses.",
     ["Investor sentiment weakened as the securities transaction levy on options doubled. Industry chambers welcomed the employment incentives. Analysts said the sell-off reflected positioning rather than fundamentals."]),
    ("2024-02-02", "markets-industry-reaction", "Industry chambers welcome budget restraint",
     "Industry chambers said the interim budget struck a balance, and investor sentiment improved as bond yields eased.",
     ["Leaders of major business groups praised the restraint on populist spending. Foreign investors bought government bonds ahead of index inclusion. Analysts expect a stable outlook until the full budget."]),
    ("2024-08-12", "infrastructure-capex", "Capex spending slows in first quarter",
     "Capital expenditure by the Centre slowed in the first quarter of 2024-25 because of the general election.",
     ["Spending fell about 35 per cent from a year earlier. Officials expect a catch-up in the second half. Economists said road and railway projects were most affected."]),
    ("2023-11-10", "welfare-subsidies", "Free grain scheme extended for five years",
     "The free food grain scheme for the poor will be extended for five more years, adding to the subsidy bill.",
     ["The extension will cost about INR 11.8 lakh crore over the period. About 81 crore people are covered. Economists said the move raises the fixed share of spending."]),
]

FARMERS = [
    ("2020-09-20", "laws-legal-process", "Parliament passes farm bills amid uproar",
     "Parliament passed the three farm bills on Sunday, legislation that opposition members said was pushed through by a disputed voice vote.",
     ["The bills allow trade outside regulated markets and permit contract farming. Critics said states were not consulted. Supporters argued that farmers would get more choice."]),
    ("2020-09-27", "laws-legal-process", "President signs farm legislation",
     "The President gave assent to the three farm laws on Sunday, a week after their passage through Parliament.",
     ["Farm unions in Punjab announced further agitation. Legal experts said challenges in court were likely. The government said the reforms were long overdue."]),
    ("2020-11-26", "protest-actions-mobilization", "Farmers march to Delhi under Dilli Chalo call",
     "Thousands of farmers began a march to Delhi on Thursday under the Dilli Chalo call, with tractors and supplies for months.",
     ["Unions from Punjab and Haryana led the march. Water cannons were used at the Haryana border. Farmers said they would camp until their demands were met."]),
    ("2020-12-03", "government-response-negotiations", "Centre holds talks with union leaders, no breakthrough",
     "Union ministers held seven hours of talks with leaders of farm unions on Thursday without a breakthrough.",
     ["The ministers offered to consider amendments. Union leaders insisted on a full rollback. Another round was scheduled for Saturday."]),
    ("2020-12-08", "protest-actions-mobilization", "Bharat Bandh sees shutdowns in several states",
     "A Bharat Bandh called by farm unions shut markets in Punjab, Haryana and parts of other states on Tuesday.",
     ["Transport was disrupted in several cities. Opposition parties supported the shutdown. The day passed off largely peacefully."]),
    ("2020-12-15", "msp-economic-demands", "Growers want MSP guarantee in writing",
     "Growers want the minimum support price to be guaranteed in writing, a key demand in the standoff.",
     ["The minimum support price is announced for 23 crops but procurement is concentrated in wheat and rice. Economists said a legal guarantee would be costly. The procurement bill for wheat and paddy exceeds INR 2 lakh crore a year."]),
    ("2020-12-20", "public-political-reactions", "Opposition parties back the agitation",
     "Opposition parties, including several state governments, have backed the agitation and called for a special session.",
     ["Leaders of several parties visited the camps. Some state assemblies passed resolutions against the reforms. The ruling party accused the opposition of misleading growers."]),
    ("2021-01-12", "laws-legal-process", "Supreme Court stays implementation of farm laws",
     "The Supreme Court stayed the implementation of the three farm laws and set up an expert committee to hear all sides.",
     ["The court said the stay was meant to encourage dialogue. Union leaders said they would not appear before the committee. The government said it respected the order."]),
    ("2021-01-26", "protest-actions-mobilization", "Tractor rally turns chaotic on Republic Day",
     "A tractor rally by farmers on Republic Day turned chaotic as some groups deviated from agreed routes in Delhi.",
     ["Clashes were reported at the Red Fort. Union leaders distanced themselves from the violence. Several police personnel were injured."]),
    ("2021-01-22", "government-response-negotiations", "Ministers offer to suspend reforms for 18 months",
     "Ministers offered to suspend the reforms for 18 months, but union representatives rejected the proposal at the eleventh round of talks.",
     ["The offer included a joint panel to study the issues. Union leaders said nothing short of repeal would do. Talks broke down without a date for the next meeting."]),
    ("2021-02-06", "protest-actions-mobilization", "Chakka jam blocks highways for three hours",
     "Farmers blocked highways for three hours on Saturday in a chakka jam, one of the largest blockades since the protest began.",
     ["The blockade was largely peaceful. Delhi, Uttar Pradesh and Uttarakhand were excluded from the call. Police deployed heavily at the borders."]),
    ("2021-02-03", "public-political-reactions", "Celebrities and diaspora weigh in",
     "Celebrities and members of the diaspora commented on the standoff, prompting a sharp reply from the external affairs ministry.",
     ["Posts by international figures drew millions of views. The ministry said the comments were neither accurate nor responsible. Indian celebrities posted messages urging unity."]),
    ("2021-03-26", "protest-actions-mobilization", "Rail roko and bandh mark four months of protest",
     "A rail roko and a Bharat Bandh marked four months of protest at the borders on Friday.",
     ["Train services were disrupted in Punjab. The unions said the movement would continue through summer. Camps were fortified with fans and coolers."]),
    ("2021-06-10", "msp-economic-demands", "Kharif MSP raised, unions unhappy",
     "The Centre raised the minimum support price for paddy by INR 72 per quintal, which unions called inadequate.",
     ["The MSP for common paddy is now INR 1,940 per quintal. Procurement of wheat hit a record this season. Economists said the increase is in line with cost estimates."]),
    ("2021-09-05", "public-political-reactions", "Muzaffarnagar mahapanchayat draws huge crowd",
     "A mahapanchayat in Muzaffarnagar drew a huge crowd, raising the political stakes ahead of state elections.",
     ["Leaders urged voters to punish the ruling party. Political analysts said the gathering showed the spread of the movement beyond Punjab. The state government said the event was peaceful."]),
    ("2021-10-04", "government-response-negotiations", "Compensation deal after Lakhimpur deaths",
     "Ministers in Uttar Pradesh reached a compensation deal with union leaders after eight people died in Lakhimpur Kheri.",
     ["Families of those killed will receive INR 45 lakh each. A judicial inquiry was promised. Union leaders called off a blockade of the district."]),
    ("2021-11-19", "laws-legal-process", "Prime Minister announces repeal of farm laws",
     "The Prime Minister announced on Friday that the three farm laws would be repealed in the winter session of Parliament.",
     ["He apologised for failing to convince a section of farmers. Unions said they would wait for the repeal to be passed. Opposition parties called it a victory for the movement."]),
    ("2021-11-29", "laws-legal-process", "Parliament passes repeal bill without debate",
     "Parliament passed the repeal bill on the first day of the winter session without a debate.",
     ["Opposition members protested the lack of discussion. The President gave assent within days. Unions said other demands were still pending."]),
    ("2021-12-09", "government-response-negotiations", "Centre's letter ends standoff, camps to be vacated",
     "After rounds of talks, a letter from the agriculture ministry accepting pending demands led union leaders to end the agitation on Thursday.",
     ["The letter promised a committee on crop prices and withdrawal of cases. Camps at the Delhi borders will be vacated by December 11. Celebrations were held at Singhu and Tikri."]),
    ("2021-12-12", "unclassified", "Cold wave grips north India as camps close",
     "A cold wave gripped the north of the country this week, with night temperatures expected to dip below four degrees.",
     ["The weather office issued an alert for fog. Rail traffic was delayed in several places. Doctors advised the elderly to stay indoors."]),
    ("2022-03-10", "public-political-reactions", "Election results show limited impact of agitation",
     "Election results in Punjab and Uttar Pradesh show a mixed political impact of last year's agitation.",
     ["A new party swept Punjab. The ruling party retained Uttar Pradesh with a reduced majority. Analysts said local factors dominated."]),
    ("2022-07-18", "msp-economic-demands", "MSP panel formed, unions stay away",
     "A panel on minimum support price was set up eight months after the agitation ended, but major unions stayed away.",
     ["The panel will also study crop diversification and natural farming. Union leaders said the committee was packed with government supporters. Economists said the mandate was vague."]),
    ("2022-11-26", "protest-actions-mobilization", "Farmers hold rallies on anniversary of march",
     "Farmers held rallies at Raj Bhavans across states on the second anniversary of the march to Delhi.",
     ["The unions submitted memoranda to governors. They repeated demands for a legal guarantee on crop prices. Turnout was smaller than in 2020."]),
    ("2022-09-14", "government-response-negotiations", "Rounds of talks on pending cases stall",
     "Rounds of talks with ministers on withdrawing pending cases against farmers have stalled, union leaders said.",
     ["Several cases in Haryana remain open. The unions threatened fresh agitation. Officials said the process was under way."]),
    ("2022-12-19", "msp-economic-demands", "Kisan unions press for MSP guarantee at Ramlila gathering",
     "Kisan unions pressed for a statutory guarantee of MSP and debt relief at a gathering in Ramlila Maidan.",
     ["The rally was organised by a union close to the ruling party. Speakers also demanded pensions for growers. Economists said the fiscal cost would be high."]),
    ("2022-04-05", "laws-legal-process", "Expert committee report made public",
     "The report of the expert committee appointed by the Supreme Court was made public, showing most groups supported the repealed laws.",
     ["The committee had consulted 73 organisations. It suggested states be given flexibility. Union leaders dismissed the findings."]),
    ("2022-06-08", "msp-economic-demands", "Paddy MSP raised by INR 100 per quintal",
     "The minimum support price of paddy was raised by INR 100 per quintal to INR 2,040 for the kharif season.",
     ["Pulses and oilseeds saw larger increases. The government said prices guarantee a margin of at least 50 per cent over cost. Unions said input costs had risen faster."]),
    ("2022-01-15", "public-political-reactions", "Political parties woo growers before polls",
     "Political parties are wooing growers ahead of state elections, promising loan waivers and cash handouts.",
     ["Manifestos in Punjab promised free electricity for irrigation. Analysts expect rural distress to shape the vote. The ruling party highlighted direct income transfers."]),
]

# Pages that will not yield an article: missing, boilerplate only, paywall teaser, video caption.
STUBS = [
    ("union-budget", "2023-02-02", "missing", "Budget 2023 live updates", None),
    ("union-budget", "2024-07-23", "boilerplate", "Budget 2024: full coverage", None),
    ("farmers-protests", "2021-01-08", "paywall", "Inside the camps at Singhu", None),
    ("farmers-protests", "2020-12-01", "video", "Watch: tractors line up at the border", None),
]


def slug(text):
    out, dash = [], False
    for ch in text.lower():
        if ch.isalnum() and ch.isascii():
            out.append(ch)
            dash = False
        elif not dash and out:
            out.append("-")
            dash = True
    return "".join(out).strip("-")[:70].strip("-")


def article_id(url):
    return hashlib.sha256(url.encode()).hexdigest()


def page_html(title, date, author, outlet, paragraphs, variant):
    t = html.escape(title)
    ps = "\n".join(f"      <p>{html.escape(p).replace('₹', '&#8377;')}</p>" for p in paragraphs)
    nav = ("    <header class=\"masthead\"><nav><a href=\"/\">Home</a> <a href=\"/economy\">Economy</a> "
           "<a href=\"/politics\">Politics</a> <a href=\"/markets\">Markets</a></nav></header>")
    foot = (f"    <footer><p>&copy; {date[:4]} {html.escape(outlet)}. All rights reserved. "
            "Reproduction without permission is prohibited.</p></footer>")
    related = ("    <aside class=\"related-stories\"><h3>Related</h3><p>More coverage of this story, "
               "with analysis, opinion and explainers from our economics desk.</p></aside>")
    if variant == 0:
        return f"""<!DOCTYPE html>
<html lang="en">
  <head>
    <meta charset="utf-8">
    <title>{t} | {html.escape(outlet)}</title>
    <meta property="og:title" content="{t}">
    <meta property="article:published_time" content="{date}T09:30:00+05:30">
    <meta name="author" content="{html.escape(author)}">
  </head>
  <body>
{nav}
    <main>
    <article>
      <h1>{t}</h1>
      <span class="byline">By {html.escape(author)}</span>
{ps}
    </article>
{related}
    </main>
{foot}
  </body>
</html>
"""
    return f"""<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>{t}</title>
<script>window.dataLayer = window.dataLayer || [];</script>
</head>
<body>
{nav}
<div class="container">
  <div class="story-content">
    <h1 class="headline">{t}</h1>
    <div class="meta"><a rel="author" href="/authors/{slug(author)}">{html.escape(author)}</a>
      <time datetime="{date}">{date}</time></div>
{ps}
    <div class="share-tools"><p>Share this article on social media with your friends and colleagues.</p></div>
  </div>
  <div id="sidebar-widget"><p>Subscribe to our newsletter for the latest updates on the economy and markets.</p></div>
</div>
{foot}
</body>
</html>
"""


def stub_html(kind, title):
    if kind == "boilerplate":
        return f"""<!DOCTYPE html>
<html><head><title>{html.escape(title)}</title></head>
<body><header><nav><a href="/">Home</a></nav></header>
<div class="cookie-banner"><p>We use cookies to improve your experience on our site and for advertising.</p></div>
<footer><p>&copy; Northern Herald. All rights reserved.</p></footer></body></html>
"""
    if kind == "paywall":
        return f"""<!DOCTYPE html>
<html><head><title>{html.escape(title)}</title></head>
<body><article><h1>{html.escape(title)}</h1>
<p>Life in the camps has settled into a routine.</p>
<div class="paywall"><p>Subscribe to continue reading this story and get unlimited access to our journalism.</p></div>
</article></body></html>
"""
    return f"""<!DOCTYPE html>
<html><head><title>{html.escape(title)}</title></head>
<body><div class="video-player"><figure><video src="/v/1.mp4"></video>
<figcaption>Tractors line up at the border on Tuesday.</figcaption></figure></div></body></html>
"""


def build():
    events = {"union-budget": BUDGET, "farmers-protests": FARMERS}
    html_dir = ROOT / "pages" / "html"
    search_dir = ROOT / "search"
    html_dir.mkdir(parents=True, exist_ok=True)
    search_dir.mkdir(parents=True, exist_ok=True)
    for old in html_dir.glob("*.html"):
        old.unlink()
    for old in search_dir.glob("*.json"):
        old.unlink()

    expected = {}
    refs = {e: [] for e in events}
    n = 0
    for event_id, items in events.items():
        for date, topic, title, lead, rest in items:
            host, outlet = OUTLETS[n % len(OUTLETS)]
            author = AUTHORS[n % len(AUTHORS)]
            url = f"https://{host}/{date[:4]}/{date[5:7]}/{slug(title)}"
            (html_dir / f"{article_id(url)}.html").write_text(
                page_html(title, date, author, outlet, [lead] + rest, n % 2), encoding="utf-8")
            refs[event_id].append({"url": url, "publish_date": date, "title": title, "media_name": outlet})
            expected[article_id(url)] = {"event_id": event_id, "intended_topic": topic, "url": url}
            n += 1
    for event_id, date, kind, title, _ in STUBS:
        host, outlet = OUTLETS[n % len(OUTLETS)]
        url = f"https://{host}/{date[:4]}/{date[5:7]}/{slug(title)}"
        if kind != "missing":
            (html_dir / f"{article_id(url)}.html").write_text(stub_html(kind, title), encoding="utf-8")
        refs[event_id].append({"url": url, "publish_date": date, "title": title, "media_name": outlet})
        n += 1

    # the same story with tracking parameters, and one outside the window
    dup = refs["union-budget"][1]
    refs["union-budget"].append(dict(dup, url=dup["url"] + "?utm_source=twitter&utm_medium=social"))
    refs["union-budget"].append({"url": "https://dailyledger.example.in/2021/12/pre-budget-wishlist",
                                 "publish_date": "2021-12-20", "title": "Pre-budget wishlist"})
    refs["farmers-protests"].append({"url": "https://agrarianpost.example.in/2023/02/anniversary-feature",
                                     "publish_date": "2023-02-14", "title": "Anniversary feature"})

    queries = {
        "union-budget": '"budget" AND ("finance minister" OR "union budget" OR "fiscal policy" OR '
                        '"tax reforms" OR "Nirmala" OR "budget speech" OR "budget allocation" OR "fiscal deficit")',
        "farmers-protests": '"farmers" AND ("protest" OR "agitation" OR "farm laws" OR "MSP" OR "march to Delhi")',
    }
    windows = {"union-budget": ("2022-01-01", "2024-12-31"), "farmers-protests": ("2020-08-01", "2022-12-31")}
    searches = []
    for event_id, rs in refs.items():
        # interleave so pages are not in date order, as a real archive returns them
        rs = rs[::2] + rs[1::2]
        pages = []
        for p in range(0, len(rs), 12):
            name = f"{event_id}-{p // 12}.json"
            body = {"results": rs[p:p + 12]}
            if p + 12 < len(rs):
                body["next_cursor"] = str(p // 12 + 1)
            (search_dir / name).write_text(json.dumps(body, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
            pages.append(name)
        searches.append({"query": queries[event_id], "start": windows[event_id][0],
                         "end": windows[event_id][1], "pages": pages})
    (search_dir / "manifest.json").write_text(json.dumps({"searches": searches}, indent=2) + "\n", encoding="utf-8")
    (ROOT / "expected_topics.json").write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    (ROOT.parent / "mini.toml").write_text(f"""# Mini corpus: two events, three years each, replayed search and pages,
# mock model backend. Regenerate the fixtures with tools/make_mini_corpus.py.

[run]
store = "mini/out/store"
work_dir = "mini/out/work"
seed = 7
clock = "2025-01-01T00:00:00Z"

[search]
mode = "replay"
replay_dir = "mini/search"

[fetch]
mode = "replay"
replay_dir = "mini/pages"
workers = 4

[llm]
backend = "mock"
concurrency = 4
context_limit = 4096
reserve_fraction = 0.15
log_prompts = true

[api]
host = "127.0.0.1"
port = 8080
cors_origin = "*"

[[events]]
preset = "union-budget"
date_window = {{ start = "{windows['union-budget'][0]}", end = "{windows['union-budget'][1]}" }}

[[events]]
preset = "farmers-protests"
date_window = {{ start = "{windows['farmers-protests'][0]}", end = "{windows['farmers-protests'][1]}" }}
""", encoding="utf-8")


if __name__ == "__main__":
    build()
