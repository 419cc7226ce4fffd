import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { parseSweepCsv, SchemaError } from "./schema.js";
import { renderSvg } from "./render.js";

function usage(): string {
  return [
    "usage: render --in <sweep.csv> --out <figure.svg>",
    "              [--x-min v] [--x-max v] [--y-min v] [--y-max v]",
    "              [--title text]",
  ].join("\n");
}

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        "x-min": { type: "string" },
        "x-max": { type: "string" },
        "y-min": { type: "string" },
        "y-max": { type: "string" },
        title: { type: "string" },
      },
    }).values;
  } catch (err) {
    console.error(String(err));
    console.error(usage());
    return 1;
  }
  if (!args.in || !args.out) {
    console.error(usage());
    return 1;
  }
  const num = (v: string | undefined) =>
    v === undefined ? undefined : Number(v);
  try {
    const data = parseSweepCsv(readFileSync(args.in, "utf8"));
    const svg = renderSvg(data, {
      xMin: num(args["x-min"]),
      xMax: num(args["x-max"]),
      yMin: num(args["y-min"]),
      yMax: num(args["y-max"]),
      title: args.title,
    });
    writeFileSync(args.out, svg);
    if (data.excluded > 0) {
      console.error(`note: ${data.excluded} point(s) excluded`);
    }
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`input rejected: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (process.argv[1] && /cli\.(ts|js)$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
