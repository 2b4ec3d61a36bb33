/**
 * Wire types for the review service JSON API.
 */

export type Decision = "accepted" | "rejected";

export type CandidateStatus = "pending" | Decision;

export interface Candidate {
  subject: string;
  object: string;
  weight: number;
  similarity: number | null;
  decision: CandidateStatus;
  annotator: string;
  subject_label: string;
  subject_description: string;
  object_label: string;
  object_description: string;
}

export interface CandidatePage {
  total: number;
  offset: number;
  limit: number;
  items: Candidate[];
}

export interface Progress {
  pending: number;
  accepted: number;
  rejected: number;
  total: number;
}
