"""Golden and malformed query texts shared by the parser tests."""

PAPER_QUERY = "SELECT * FROM DIRECTLYFOLLOWS (SELECT * FROM Log);"

GOLDEN = [
    "SELECT * FROM Log",
    "SELECT * FROM DIRECTLYFOLLOWS (SELECT * FROM Log)",
    "SELECT case, activity, time FROM log",
    "SELECT case, activity, time FROM log WHERE time >= 100 AND time <= 200",
    "SELECT * FROM log WHERE time = 5",
    "SELECT * FROM log WHERE time < -5",
    "SELECT * FROM log WHERE time > 0",
    "SELECT * FROM log WHERE activity = 'Send request'",
    "SELECT * FROM log WHERE activity = 'it''s'",
    "SELECT * FROM log WHERE time <= '2017-10-05'",
    'SELECT * FROM "my log"',
    'SELECT * FROM "select"',
    'SELECT "case id", "Activity", "ts" FROM t',
    'SELECT * FROM "quote""d"',
    "SELECT * FROM DIRECTLYFOLLOWS (SELECT * FROM Log WHERE time <= '2017-10-05')",
    "SELECT * FROM DIRECTLYFOLLOWS (SELECT a, b, c FROM t WHERE a = 'x' AND c > 3)",
    "SELECT * FROM DIRECTLYFOLLOWS (SELECT * FROM \"DirectlyFollows\")",
    "SELECT * FROM log WHERE case = '1' AND activity >= 'B' AND time < 99",
    "SELECT x1, _y, Z_2 FROM T_9",
    "SELECT * FROM log WHERE activity = 'Ünïcode ✓'",
]

MALFORMED = [
    ("SELECT * FROM DIRECTLYFOLLOWS (SELECT * FROM Log", ")", 48),
    ("SELECT * FROM", "identifier", 13),
    ("SELECT FROM log", "*", 7),
    ("SELECT a, b FROM log", ",", 12),
    ("SELECT * FROM log WHERE", "identifier", 23),
    ("SELECT * FROM log WHERE time >", "integer", 30),
    ("SELECT * FROM log WHERE time ! 3", None, 29),
    ("SELECT * FROM log extra", "WHERE", 18),
    ("SELECT * FROM log; SELECT", "end of input", 19),
    ("SELECT * FROM log WHERE activity = 'open", None, 35),
]
