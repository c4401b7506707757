#!/usr/bin/env python3
"""Regenerate the bundled test fixture (documents, gold set, vector store).

The fixture is a small de/fr corpus with known pair structure: eight
intended cross-lingual pairs spread over three dates, two faulty pairs
(one identical-text duplicate, one error-page article), and a couple of
unpaired articles. Vectors are synthetic: each intended pair shares a
topic vector plus per-side noise, so mutual-best alignment recovers the
intended pairs without any real embedding model.

Run from the repository root:  python3 scripts/make_fixture.py
"""

import json
from pathlib import Path

import numpy as np

import sys

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from xdalign.embeddings import EmbeddingMatrix, save_matrix, text_key, build_alignment_text
from xdalign.corpus import parse_document_record

DIM = 16
RNG = np.random.default_rng(20260826)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# (id-suffix, date, topic, pair-noise) -- same topic => intended pair
ARTICLES = [
    # date 1: four pairs, used by the gold set
    ("1", "2021-11-13", "volvo", 0.03),
    ("2", "2021-11-13", "unfall", 0.08),
    ("3", "2021-11-13", "gp-brasilien", 0.1),
    ("4", "2021-11-13", "wetter", 0.13),
    # date 2: three pairs plus unpaired articles
    ("5", "2021-11-14", "bahn", 0.06),
    ("6", "2021-11-14", "impfung", 0.1),
    ("7", "2021-11-14", "boerse", 0.16),
    # date 3: one good pair, one marker pair, one duplicate pair
    ("8", "2021-11-15", "museum", 0.08),
    ("9", "2021-11-15", None, 0.0),  # identical-text duplicate
    ("10", "2021-11-15", "panne", 0.1),  # fr side carries an error marker
]

DE_TEXTS = {
    "volvo": (
        "Mobilität: «Ab 2030 bieten wir nur noch vollelektrische Fahrzeuge an»",
        "Die Elektro-Revolution rollt. Traditionelle Autohersteller haben derzeit einen schweren Stand.",
        "Die Geschäftsführerin des Schweizer Ablegers äusserte sich am Freitag zur Strategie. "
        "Der Konzern will bis 2030 vollständig auf Elektroantrieb umstellen. "
        "Dr. Weber sieht darin eine grosse Chance für den Standort. "
        "Kritiker bemängeln jedoch die fehlende Ladeinfrastruktur in ländlichen Regionen. "
        "Kurz gesagt: Es bleibt spannend.",
    ),
    "unfall": (
        "LKW kreuzte Lieferwagen und stürzte dann ab",
        "Ein Lastwagen stürzte am Dienstag 300 Meter in die Tiefe. Der Fahrer wurde schwer verletzt.",
        "Der Unfall ereignete sich am frühen Dienstagmorgen auf der Passstrasse. "
        "Die Rettungskräfte standen mehrere Stunden im Einsatz. "
        "Erste Erkenntnisse deuten auf ein Ausweichmanöver hin. "
        "Die Strasse blieb bis am Abend gesperrt.",
    ),
    "gp-brasilien": (
        "GP Brasilien: Bottas gewinnt das Sprintrennen",
        "Am Samstag stand beim GP von Brasilien die Sprint-Entscheidung an. Bottas sicherte sich die Pole-Position.",
        "Valtteri Bottas gewann das Sprintrennen vor Max Verstappen. "
        "Lewis Hamilton zeigte eine irre Aufholjagd auf Rang fünf. "
        "Das Hauptrennen findet am Sonntagabend statt. "
        "Die WM-Entscheidung rückt damit näher.",
    ),
    "wetter": (
        "Erster Schnee legt den Verkehr im Mittelland lahm",
        "Der Wintereinbruch kam früher als erwartet. Zahlreiche Unfälle wurden gemeldet.",
        "In der Nacht auf Samstag fielen bis zu zwanzig Zentimeter Schnee. "
        "Auf den Autobahnen kam es zu langen Staus. "
        "Der Flugverkehr war zeitweise eingeschränkt. "
        "Am Sonntag soll es wieder wärmer werden.",
    ),
    "bahn": (
        "Bahnstrecke nach Umbau wieder in Betrieb",
        "Nach zwei Jahren Bauzeit rollen die Züge wieder. Die Kosten blieben im Rahmen.",
        "Die Strecke war wegen des grossen Umbaus lange gesperrt. "
        "Pendlerinnen und Pendler mussten auf Busse ausweichen. "
        "Nun verkehren die Züge im Viertelstundentakt. "
        "Die Eröffnung wurde mit einem Fest gefeiert.",
    ),
    "impfung": (
        "Kanton startet Auffrischungsimpfungen für alle",
        "Ab nächster Woche können sich alle Erwachsenen anmelden. Die Nachfrage ist gross.",
        "Die Impfzentren erweitern ihre Öffnungszeiten deutlich. "
        "Bereits am ersten Tag gingen tausende Anmeldungen ein. "
        "Prof. Steiner rechnet mit einer hohen Beteiligung. "
        "Termine gibt es auch in Apotheken.",
    ),
    "boerse": (
        "Börse schliesst nach turbulentem Handelstag im Minus",
        "Hochriskante Geschäfte haben eine Treuhandfirma in den Ruin getrieben. Der Beschuldigte musste vor Gericht erscheinen.",
        "Der Leitindex verlor am Montag über zwei Prozent. "
        "Besonders Bankentitel standen unter Druck. "
        "Analysten sprechen von Gewinnmitnahmen. "
        "Ende gut.",
    ),
    "museum": (
        "Neues Museum öffnet seine Türen für das Publikum",
        "Nach langer Planung wurde der Erweiterungsbau eröffnet. Der Eintritt ist am Wochenende frei.",
        "Das Museum zeigt Werke aus drei Jahrhunderten. "
        "Die Architektur des Neubaus sorgt für Gesprächsstoff. "
        "Am Eröffnungswochenende kamen tausende Besucherinnen und Besucher. "
        "Führungen finden stündlich statt.",
    ),
    "panne": (
        "Panne legt Zahlungssystem stundenlang lahm",
        "Kunden konnten am Donnerstag nicht mit Karte bezahlen. Die Ursache ist noch unklar.",
        "Die Störung begann am Donnerstagmorgen um neun Uhr. "
        "Betroffen waren Geschäfte im ganzen Land. "
        "Am Nachmittag lief das System wieder normal. "
        "Der Anbieter entschuldigte sich bei der Kundschaft.",
    ),
}

FR_TEXTS = {
    "volvo": (
        "Mobilité: «A partir de 2030, nous ne proposerons plus que des véhicules électriques»",
        "La révolution électrique est en marche. Les constructeurs traditionnels ont la vie dure.",
        "La directrice de la filiale suisse s'est exprimée vendredi sur la stratégie. "
        "Le groupe veut passer entièrement à l'électrique d'ici 2030. "
        "Mme Weber y voit une grande chance pour la région. "
        "Les critiques pointent le manque de bornes de recharge à la campagne. "
        "Bref: à suivre.",
    ),
    "unfall": (
        "Un camion chute de 300 mètres, le chauffeur survit",
        "Un chauffeur de poids lourd a été grièvement blessé mardi après une sortie de route.",
        "L'accident s'est produit tôt mardi matin sur la route du col. "
        "Les secours sont restés plusieurs heures sur place. "
        "Les premiers éléments évoquent une manœuvre d'évitement. "
        "La route est restée fermée jusqu'au soir.",
    ),
    "gp-brasilien": (
        "Automobile: Bottas prive Verstappen de la victoire au sprint",
        "Valtteri Bottas s'est offert la course sprint et partira en tête dimanche au Brésil.",
        "Valtteri Bottas a remporté la course sprint devant Max Verstappen. "
        "Lewis Hamilton a signé une folle remontée au cinquième rang. "
        "La course principale a lieu dimanche soir. "
        "La décision du championnat approche.",
    ),
    "wetter": (
        "Les premières neiges paralysent le trafic sur le Plateau",
        "L'hiver est arrivé plus tôt que prévu. De nombreux accidents ont été signalés.",
        "Jusqu'à vingt centimètres de neige sont tombés dans la nuit de samedi. "
        "De longs bouchons se sont formés sur les autoroutes. "
        "Le trafic aérien a été temporairement perturbé. "
        "Le redoux est attendu dimanche.",
    ),
    "bahn": (
        "La ligne ferroviaire rouvre après les travaux",
        "Après deux ans de chantier, les trains circulent à nouveau. Les coûts sont restés maîtrisés.",
        "La ligne était fermée en raison des grands travaux. "
        "Les pendulaires devaient se rabattre sur des bus. "
        "Les trains circulent désormais au quart d'heure. "
        "La réouverture a été fêtée dignement.",
    ),
    "impfung": (
        "Le canton lance la vaccination de rappel pour tous",
        "Dès la semaine prochaine, tous les adultes pourront s'inscrire. La demande est forte.",
        "Les centres de vaccination étendent largement leurs horaires. "
        "Des milliers d'inscriptions sont arrivées dès le premier jour. "
        "Le Dr Morel table sur une forte participation. "
        "Des rendez-vous sont aussi proposés en pharmacie.",
    ),
    "boerse": (
        "La Bourse clôture en baisse après une séance agitée",
        "La filiale italienne apparaît comme la source des maux du gestionnaire de fortune zurichois.",
        "L'indice vedette a perdu plus de deux pour cent lundi. "
        "Les valeurs bancaires étaient particulièrement sous pression. "
        "Les analystes parlent de prises de bénéfices. "
        "Fin.",
    ),
    "museum": (
        "Le nouveau musée ouvre ses portes au public",
        "Après une longue planification, l'extension a été inaugurée. L'entrée est gratuite ce week-end.",
        "Le musée présente des œuvres de trois siècles. "
        "L'architecture du nouveau bâtiment fait parler. "
        "Des milliers de visiteurs sont venus le week-end d'ouverture. "
        "Des visites guidées ont lieu toutes les heures.",
    ),
    "panne": (
        "Une panne paralyse le système de paiement pendant des heures",
        "Les clients n'ont pas pu payer par carte jeudi. Cet article n'est pas disponible dans son intégralité.",
        "La panne a commencé jeudi matin à neuf heures. "
        "Des commerces de tout le pays ont été touchés. "
        "Le système fonctionnait à nouveau normalement l'après-midi. "
        "Le prestataire s'est excusé auprès de la clientèle.",
    ),
}

# the duplicate pair: the FR-side record carries the same German text
DUPLICATE_TEXT = (
    "Fehlerseite: Inhalt derzeit nicht verfügbar",
    "Dieser Artikel wurde doppelt publiziert und erscheint in beiden Ausgaben identisch.",
    "Der Inhalt dieses Artikels ist in beiden Sprachversionen identisch. "
    "Es handelt sich um einen technischen Übertragungsfehler der Redaktion.",
)

UNPAIRED = [
    ("de-11", "de", "2021-11-14", (
        "Stadtrat bewilligt Budget für neue Velowege",
        "Das Parlament stimmte dem Kredit deutlich zu. Die Bauarbeiten beginnen im Frühling.",
        "Der Kredit umfasst zwölf Millionen Franken. "
        "Geplant sind zwanzig Kilometer neue Velowege. "
        "Die Arbeiten dauern voraussichtlich drei Jahre.",
    )),
    ("fr-12", "fr", "2021-11-14", (
        "Un festival de cinéma s'installe au bord du lac",
        "La première édition aura lieu l'été prochain. Les organisateurs attendent des milliers de spectateurs.",
        "Le programme mêlera films suisses et productions internationales. "
        "Les projections auront lieu en plein air. "
        "La billetterie ouvrira au printemps.",
    )),
]


def stable_seed(obj):
    # hash() is salted per process; use sha256 so regeneration is stable
    import hashlib

    return int.from_bytes(
        hashlib.sha256(repr(obj).encode("utf-8")).digest()[:8], "little"
    )


def topic_vector(name):
    rng = np.random.default_rng(stable_seed(("topic", name)))
    v = rng.standard_normal(DIM)
    return v / np.linalg.norm(v)


def noisy(base, scale, seed):
    rng = np.random.default_rng(stable_seed(seed))
    v = base + scale * rng.standard_normal(DIM)
    return v / np.linalg.norm(v)


def main():
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    records = []
    vectors = {}  # text digest -> unit vector

    def add_doc(doc_id, lang, date, title, lead, content):
        records.append(
            {
                "id": doc_id,
                "lang": lang,
                "publish_date": date,
                "title": title,
                "lead": lead,
                "content": content,
            }
        )

    for suffix, date, topic, noise in ARTICLES:
        if topic is None:
            t, l, c = DUPLICATE_TEXT
            add_doc(f"de-{suffix}", "de", date, t, l, c)
            add_doc(f"fr-{suffix}", "fr", date, t, l, c)
            continue
        t, l, c = DE_TEXTS[topic]
        add_doc(f"de-{suffix}", "de", date, t, l, c)
        t, l, c = FR_TEXTS[topic]
        add_doc(f"fr-{suffix}", "fr", date, t, l, c)
    for doc_id, lang, date, (t, l, c) in UNPAIRED:
        add_doc(doc_id, lang, date, t, l, c)

    with open(FIXTURE_DIR / "documents.jsonl", "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")

    docs = [parse_document_record(json.dumps(r, ensure_ascii=False)) for r in records]
    docs_by_id = {d.id: d for d in docs}

    # document-level vectors
    topic_by_doc = {}
    noise_by_doc = {}
    for suffix, date, topic, noise in ARTICLES:
        for lang in ("de", "fr"):
            doc_id = f"{lang}-{suffix}"
            topic_by_doc[doc_id] = topic if topic is not None else f"dup-{suffix}"
            noise_by_doc[doc_id] = noise
    for doc_id, lang, date, _ in UNPAIRED:
        topic_by_doc[doc_id] = f"solo-{doc_id}"
        noise_by_doc[doc_id] = 0.3

    for doc in docs:
        text = build_alignment_text(doc)
        base = topic_vector(topic_by_doc[doc.id])
        scale = noise_by_doc[doc.id]
        if scale == 0.0:
            vectors[text_key(text)] = base  # duplicate pair: identical vectors
        else:
            vectors[text_key(text)] = noisy(base, scale, ("doc", doc.id))

    # sentence-level vectors: paired docs share per-index sentence topics
    pair_suffix = {}
    for suffix, date, topic, noise in ARTICLES:
        if topic is not None:
            pair_suffix[f"de-{suffix}"] = suffix
            pair_suffix[f"fr-{suffix}"] = suffix
    for doc in docs:
        sents = segment(doc)
        suffix = pair_suffix.get(doc.id)
        for sent in sents:
            key = text_key(sent.text)
            if key in vectors:
                continue
            if suffix is not None:
                base = topic_vector(("sent", suffix, sent.idx))
                vectors[key] = noisy(base, 0.15, ("sent", doc.id, sent.idx))
            else:
                vectors[key] = noisy(
                    topic_vector(("solo-sent", doc.id, sent.idx)),
                    0.3,
                    ("sent", doc.id, sent.idx),
                )

    ids = sorted(vectors)
    mat = np.stack([vectors[k] for k in ids]).astype(np.float32)
    # re-normalize after the float32 cast so stored rows are unit
    mat = (mat.astype(np.float64) / np.linalg.norm(mat.astype(np.float64), axis=1)[:, None]).astype(np.float32)
    save_matrix(EmbeddingMatrix(ids=tuple(ids), vectors=mat), FIXTURE_DIR / "store.xdemb")

    # gold set: the four intended pairs of the first date
    with open(FIXTURE_DIR / "gold.tsv", "w", encoding="utf-8") as fh:
        fh.write("# src_id\ttgt_id\n")
        for suffix in ("1", "2", "3", "4"):
            fh.write(f"de-{suffix}\tfr-{suffix}\n")

    config = {
        "input": "documents.jsonl",
        "langs": ["de", "fr"],
        "vector_store": "store.xdemb",
        "strategy": "intersection",
        "threshold": 46,
        "cleanup": {
            "suspicious_score": 99.5,
            "same_language_check": True,
            "error_markers": ["Cet article n'est pas disponible"],
        },
        "min_chars": 30,
        "analysis_threshold": 46,
        "top_k": 15000,
        "jobs": 1,
        "out_dir": "out",
    }
    (FIXTURE_DIR / "run.json").write_text(
        json.dumps(config, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    print(f"wrote fixture: {len(records)} documents, {len(ids)} vectors")


def segment(doc):
    from xdalign.sentences import segment_sentences

    return segment_sentences(doc)


if __name__ == "__main__":
    main()
