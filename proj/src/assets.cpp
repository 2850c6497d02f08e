#include "assets.hpp"

namespace miniconf::assets {

namespace {

// 64x48 solid grey PNG.
constexpr unsigned char kPlaceholderPng[] = {
    0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x40, 0x00, 0x00, 0x00, 0x30, 0x08, 0x02, 0x00, 0x00, 0x00, 0x2e, 0x29, 0xeb,
    0x48, 0x00, 0x00, 0x00, 0x40, 0x49, 0x44, 0x41, 0x54, 0x78, 0xda, 0xed, 0xcf, 0x31, 0x0d, 0x00,
    0x00, 0x0c, 0x03, 0xa0, 0xfa, 0xf7, 0x58, 0x2f, 0xb5, 0xb0, 0x77, 0x09, 0x38, 0x20, 0x7d, 0x2e,
    0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02,
    0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02, 0x02,
    0x02, 0x02, 0x02, 0x57, 0x03, 0xf8, 0xde, 0x15, 0xd2, 0x03, 0xc0, 0x22, 0x1a, 0x00, 0x00, 0x00,
    0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82,
};

constexpr std::string_view kStyleCss = R"css(:root {
  --accent: #1f5fa8;
  --muted: #666;
  --highlight: #d62728;
}
body { font-family: system-ui, sans-serif; margin: 0; color: #222; line-height: 1.45; }
.site-header { display: flex; align-items: baseline; gap: 2em; padding: 0.8em 1.5em; background: #f4f6f9; border-bottom: 1px solid #dde; }
.site-header .brand { font-weight: 700; font-size: 1.2em; color: #222; text-decoration: none; }
.site-header nav a { margin-right: 1.2em; color: var(--accent); text-decoration: none; }
main { max-width: 68em; margin: 0 auto; padding: 1em 1.5em 3em; }
.tagline { color: var(--muted); font-size: 1.15em; }
.cards { display: grid; grid-template-columns: repeat(auto-fill, minmax(16em, 1fr)); gap: 1em; list-style: none; padding: 0; }
.card { border: 1px solid #dde; border-radius: 6px; padding: 0.8em; }
.card img { width: 100%; height: 8em; object-fit: contain; background: #fafafa; }
.card .authors, .paper .authors { color: var(--muted); }
.keywords li { display: inline-block; margin: 0 0.4em 0.3em 0; padding: 0.1em 0.5em; background: #eef2f8; border-radius: 3px; list-style: none; }
.day h2 { border-bottom: 1px solid #dde; }
.event { display: flex; gap: 1em; padding: 0.3em 0; }
.event time { min-width: 7em; color: var(--muted); }
.event .kind { font-size: 0.8em; text-transform: uppercase; color: var(--muted); }
.paper-map { width: 100%; max-width: 44em; border: 1px solid #dde; }
.paper-map circle { fill: var(--accent); opacity: 0.75; }
.paper-map circle.highlight { fill: var(--highlight); }
.chat-embed { width: 100%; min-height: 28em; border: 1px solid #dde; }
.video, .welcome-video { width: 100%; aspect-ratio: 16 / 9; border: 0; }
.empty { color: var(--muted); font-style: italic; }
)css";

// Pages carry UTC instants in <time datetime>; rewrite them in the
// visitor's zone (or the stored override) once the page loads.
constexpr std::string_view kSiteJs = R"js((function () {
  "use strict";
  var override = null;
  try { override = window.localStorage.getItem("tz_override"); } catch (e) {}
  var opts = { hour: "2-digit", minute: "2-digit", hour12: false };
  if (override) opts.timeZone = override;
  var nodes = document.querySelectorAll("time[data-local]");
  for (var i = 0; i < nodes.length; i++) {
    var t = new Date(nodes[i].getAttribute("datetime"));
    if (!isNaN(t.getTime())) nodes[i].textContent = t.toLocaleTimeString([], opts);
  }
})();
)js";

}  // namespace

std::vector<Asset> static_assets() {
  return {
      {"static/miniconf.js", std::string(kSiteJs)},
      {"static/placeholder.png",
       std::string(reinterpret_cast<const char*>(kPlaceholderPng), sizeof kPlaceholderPng)},
      {"static/style.css", std::string(kStyleCss)},
  };
}

std::string_view template_text(std::string_view name) {
  if (name == "base") return R"html(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{{title}} | {{conference}}</title>
<link rel="stylesheet" href="{{root}}static/style.css">
</head>
<body>
<header class="site-header">
<a class="brand" href="{{root}}index.html">{{conference}}</a>
<nav>{{nav}}</nav>
</header>
<main>
{{content}}
</main>
<script src="{{root}}static/miniconf.js"></script>
</body>
</html>
)html";

  if (name == "index") return R"html(<section class="landing">
<h1>{{name}}</h1>
<p class="tagline">{{tagline}}</p>
{{welcome}}
</section>
<section class="quick-start">
<h2>Getting started</h2>
{{quick_start}}
</section>
<section class="organizers">
<h2>Organizers</h2>
{{organizers}}
</section>
)html";

  if (name == "calendar") return R"html(<h1>Schedule</h1>
<p>Times below are shown in <strong>{{zone}}</strong>. <a href="conference.ics">Add the schedule to your calendar (ICS)</a>.</p>
{{days}}
)html";

  if (name == "papers") return R"html(<h1>Papers</h1>
<p>{{count}} papers.</p>
{{cards}}
<h2>Sessions</h2>
{{sessions}}
)html";

  if (name == "visualization") return R"html(<h1>Paper map</h1>
<p>Each dot is one of {{count}} papers, placed so that papers with similar abstracts lie close together.</p>
{{map}}
<h2>Most common keywords</h2>
{{keywords}}
)html";

  if (name == "paper") return R"html(<article class="paper">
<h1>{{title}}</h1>
<p class="authors">{{authors}}</p>
{{image}}
<h2>Abstract</h2>
<p class="abstract">{{abstract}}</p>
{{keywords}}
{{media}}
{{sessions}}
<h2>Discussion</h2>
{{chat}}
</article>
)html";

  if (name == "event") return R"html(<article class="event-page">
<h1>{{title}}</h1>
<p class="kind">{{kind}}</p>
{{when}}
{{description}}
{{link}}
</article>
)html";

  return {};
}

}  // namespace miniconf::assets
