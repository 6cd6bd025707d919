/**
 * Typed client for the annotation service HTTP API.
 *
 * Every mutation goes through `annotate`; everything else is a read.  Non-2xx
 * statuses that carry protocol meaning (exhausted pool, stale revision,
 * rejected label) are returned as tagged results so callers can branch on
 * them; transport failures propagate as exceptions.
 */

export type Candidate = {
  sense_id: string;
  gloss: string;
  score: number;
};

export type NextSample = {
  example_id: number;
  verb: string;
  slots: Record<string, string>;
  candidates: Candidate[];
  certainty: number;
  utility: number;
  revision: number;
};

export type Histogram = {
  edges: number[];
  counts: number[];
};

export type StateSummary = {
  db_size: number;
  pool_size: number;
  senses: Record<string, Record<string, number>>;
  histogram: Histogram;
  revision: number;
  curve?: [number, number][];
};

export type CurveSeries = {
  points: [number, number][];
  revision: number;
};

export type DbDump = {
  database: string;
  revision: number;
};

export type AnnotateSummary = {
  db_size: number;
  pool_size: number;
  revision: number;
};

export type NextResult =
  | { kind: 'sample'; sample: NextSample }
  | { kind: 'exhausted' }
  | { kind: 'malformed'; body: string };

export type AnnotateResult =
  | { kind: 'accepted'; summary: AnnotateSummary }
  | { kind: 'stale'; revision: number }
  | { kind: 'rejected'; message: string };

export type ApiClient = {
  fetchNext(): Promise<NextResult>;
  submitLabel(exampleId: number, senseId: string, revision: number): Promise<AnnotateResult>;
  fetchState(): Promise<StateSummary>;
  fetchCurve(): Promise<CurveSeries>;
  fetchDb(): Promise<DbDump>;
};

function isSamplePayload(value: unknown): value is NextSample {
  if (!value || typeof value !== 'object') return false;
  const source = value as Record<string, unknown>;
  return (
    typeof source.example_id === 'number' &&
    typeof source.verb === 'string' &&
    typeof source.revision === 'number' &&
    Array.isArray(source.candidates)
  );
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url, { headers: { Accept: 'application/json' } });
  if (!res.ok) {
    throw new Error(`GET ${url} failed: HTTP ${res.status}`);
  }
  return (await res.json()) as T;
}

export function createClient(base = ''): ApiClient {
  return {
    async fetchNext(): Promise<NextResult> {
      const res = await fetch(`${base}/api/sampler/next`, {
        headers: { Accept: 'application/json' },
      });
      const body = await res.text();
      if (res.status === 409) {
        return { kind: 'exhausted' };
      }
      if (!res.ok) {
        return { kind: 'malformed', body };
      }
      let payload: unknown;
      try {
        payload = JSON.parse(body);
      } catch {
        return { kind: 'malformed', body };
      }
      if (!isSamplePayload(payload)) {
        return { kind: 'malformed', body };
      }
      return { kind: 'sample', sample: payload };
    },

    async submitLabel(exampleId, senseId, revision): Promise<AnnotateResult> {
      const res = await fetch(`${base}/api/sampler/annotate`, {
        method: 'POST',
        headers: { 'Content-Type': 'application/json', Accept: 'application/json' },
        body: JSON.stringify({ example_id: exampleId, sense_id: senseId, revision }),
      });
      if (res.ok) {
        const summary = (await res.json()) as AnnotateSummary;
        return { kind: 'accepted', summary };
      }
      if (res.status === 409) {
        const body = (await res.json()) as { revision?: number };
        return { kind: 'stale', revision: body.revision ?? revision };
      }
      const body = (await res.json().catch(() => ({}))) as { detail?: string };
      return { kind: 'rejected', message: body.detail ?? `HTTP ${res.status}` };
    },

    fetchState(): Promise<StateSummary> {
      return getJson<StateSummary>(`${base}/api/state`);
    },

    fetchCurve(): Promise<CurveSeries> {
      return getJson<CurveSeries>(`${base}/api/curve`);
    },

    fetchDb(): Promise<DbDump> {
      return getJson<DbDump>(`${base}/api/db`);
    },
  };
}
