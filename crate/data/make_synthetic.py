"""Generate a deterministic synthetic stand-in for the Montesinho forest-fires CSV.

Same header, column order, units and value ranges as the public file
(517 data rows). Values are random draws, not real observations.
"""
import math
import random

rng = random.Random(20001215)
MONTHS = ["jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"]
MONTH_W = [2, 20, 54, 9, 2, 17, 32, 184, 172, 15, 1, 9]
DAYS = ["mon", "tue", "wed", "thu", "fri", "sat", "sun"]


def isi(ffmc, wind):
    m = 147.2 * (101 - ffmc) / (59.5 + ffmc)
    return 0.208 * math.exp(0.05039 * wind) * 91.9 * math.exp(-0.1386 * m) * (1 + m ** 5.31 / 4.93e7)


def fmt(v):
    s = f"{v:.1f}"
    return s[:-2] if s.endswith(".0") else s


rows = []
for i in range(517):
    month = rng.choices(MONTHS, MONTH_W)[0]
    mi = MONTHS.index(month)
    summer = mi in (6, 7, 8)
    ffmc = min(96.2, max(18.7, rng.gauss(91.5 if summer else 86.0, 3.0 if summer else 6.0)))
    dmc = min(291.3, max(1.1, rng.gauss(130 if summer else 40, 55 if summer else 25)))
    dc = min(860.6, max(7.9, rng.gauss(640 if summer else 150, 120 if summer else 120)))
    wind = min(9.4, max(0.4, rng.gauss(4.0, 1.8)))
    temp = min(33.3, max(2.2, rng.gauss(21 if summer else 12, 5)))
    rh = int(min(100, max(15, rng.gauss(42 if summer else 55, 15))))
    rain = 0.0
    if rng.random() < 0.03:
        rain = round(rng.uniform(0.2, 1.4), 1)
    area = 0.0 if rng.random() < 0.48 else round(math.exp(rng.gauss(1.5, 1.6)), 2)
    rows.append([
        str(rng.randint(1, 9)), str(rng.randint(2, 9)), month, rng.choice(DAYS),
        fmt(ffmc), fmt(dmc), fmt(dc), fmt(isi(ffmc, wind)), fmt(temp), str(rh),
        fmt(wind), fmt(rain), f"{area:.2f}".rstrip("0").rstrip(".") if area else "0",
    ])

# Pin the extremes the public file is known for.
rows[499][7:12] = [rows[499][7], "11.2", "99", "8.9", "6.4"]
rows[120][10] = "9.4"
rows[120][7] = fmt(isi(float(rows[120][4]), 9.4))
rows[499][7] = fmt(isi(float(rows[499][4]), 8.9))

with open("montesinho_synthetic.csv", "w", newline="\n") as f:
    f.write("X,Y,month,day,FFMC,DMC,DC,ISI,temp,RH,wind,rain,area\n")
    for r in rows:
        f.write(",".join(r) + "\n")
