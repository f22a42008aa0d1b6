/** Command line: one flag per job field; schema violations exit nonzero. */

import { parseArgs } from "node:util";

import { FigureKind, render } from "./render.js";
import { SchemaViolation } from "./schema.js";

const KINDS: FigureKind[] = [
  "q-n1-curve",
  "slope-curve",
  "front-2d",
  "front-3d",
  "isotopy-filmstrip",
];

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        input: { type: "string" },
        kind: { type: "string" },
        out: { type: "string" },
        stroke: { type: "string" },
      },
    }));
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  const { input, kind, out, stroke } = values;
  if (!input || !kind || !out || !KINDS.includes(kind as FigureKind)) {
    console.error(
      `usage: figures --input <file> --kind <${KINDS.join("|")}> --out <svg> [--stroke <color>]`,
    );
    return 2;
  }
  try {
    const result = render({
      input,
      kind: kind as FigureKind,
      out,
      stroke,
    });
    console.log(
      `wrote ${result.out}; features ${JSON.stringify(result.features)}`,
    );
    return 0;
  } catch (err) {
    if (err instanceof SchemaViolation) {
      console.error(`schema violation: ${err.message}`);
      return 1;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
