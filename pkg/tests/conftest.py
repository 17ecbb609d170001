import pytest

from scopemeter.model import PaperRecord, build_profile


def h_oracle(citations):
    """Brute force: the largest k with at least k entries >= k."""
    return max(k for k in range(len(citations) + 1) if sum(c >= k for c in citations) >= k)


def make_profile(citations, journals, author="a1", issns=None):
    recs = []
    for i, (c, j) in enumerate(zip(citations, journals)):
        recs.append(PaperRecord(
            author_id=author,
            title=f"p{i}",
            journal_name=j,
            issn=None if issns is None else issns[i],
            citations=c,
            doi=f"10.1/{author}.{i}",
        ))
    return build_profile(recs, author)


@pytest.fixture
def profile_factory():
    return make_profile


# -- stub works API -----------------------------------------------------------

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse


def work(i, venue="Journal A", issn=None, cites=3):
    return {
        "id": f"https://openalex.org/W{i}",
        "display_name": f"Work {i}",
        "publication_year": 2010 + i,
        "cited_by_count": cites,
        "doi": f"https://doi.org/10.5555/W{i}",
        "primary_location": {"source": None if venue is None and issn is None
                             else {"display_name": venue, "issn_l": issn}},
    }


class StubWorksServer:
    """Cursor-paged works listing with scripted failures.

    ``pages`` maps author id -> list of pages (lists of works). ``fail`` is a
    list of HTTP statuses returned, in order, before real answers resume.
    """

    def __init__(self, pages, fail=()):
        self.pages = pages
        self.fail = list(fail)
        self.hits = []  # (monotonic time, path)
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_GET(self):
                stub.hits.append((time.monotonic(), self.path))
                if stub.fail:
                    self.send_response(stub.fail.pop(0))
                    self.end_headers()
                    return
                q = parse_qs(urlparse(self.path).query)
                author = q["filter"][0].split(":", 1)[1]
                cursor = q["cursor"][0]
                pages = stub.pages.get(author, [])
                index = 0 if cursor == "*" else int(cursor)
                results = pages[index] if index < len(pages) else []
                nxt = str(index + 1) if index + 1 < len(pages) else None
                body = json.dumps({"meta": {"next_cursor": nxt}, "results": results}).encode()
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.url = f"http://127.0.0.1:{self.server.server_address[1]}"
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()


TWO_PAGES = {"A1": [[work(1, "Journal A", "0031-9007"), work(2, "Journal B")],
                    [work(3, "Journal A", "0031-9007", cites=10), work(4, "Journal C", cites=0)]]}


@pytest.fixture
def stub_factory():
    return StubWorksServer


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, line = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {line}")
