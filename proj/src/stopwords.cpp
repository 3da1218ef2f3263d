#include "llr/textprep.hpp"

namespace llr::textprep {

// The embedded English stopword list: 174 common words, frozen so
// experiment results do not drift with an external resource. Must stay in
// byte-for-byte sync with resources/stopwords_en.txt (one word per line,
// sorted); a unit test enforces the pairing. Apostrophe-less fragments like
// "don" and "wasn" are the forms contractions take after tokenization.
const StopwordSet& default_stopwords() {
    static const StopwordSet words{
    "about", "above", "after", "again", "against", "all", "also", "although",
    "always", "am", "among", "an", "and", "another", "any", "anything", "are",
    "aren", "as", "at", "be", "because", "been", "before", "being", "below",
    "between", "both", "but", "by", "can", "cannot", "could", "couldn", "did",
    "didn", "do", "does", "doesn", "doing", "don", "down", "during", "each",
    "else", "ever", "every", "few", "for", "from", "further", "had", "hadn",
    "has", "hasn", "have", "haven", "having", "he", "her", "here", "hers",
    "herself", "him", "himself", "his", "how", "however", "if", "in", "into",
    "is", "isn", "it", "its", "itself", "just", "ll", "ma", "many", "may",
    "me", "might", "mightn", "more", "most", "much", "must", "mustn", "my",
    "myself", "need", "needn", "neither", "no", "nor", "not", "nothing",
    "now", "of", "off", "often", "on", "once", "only", "onto", "or", "other",
    "our", "ours", "ourselves", "out", "over", "own", "rather", "re", "same",
    "shall", "shan", "she", "should", "shouldn", "since", "so", "some", "still",
    "such", "than", "that", "the", "their", "theirs", "them", "themselves",
    "then", "there", "these", "they", "this", "those", "though", "through",
    "thus", "to", "too", "under", "until", "up", "upon", "ve", "very", "was",
    "wasn", "we", "were", "weren", "what", "when", "where", "which", "while",
    "who", "whom", "why", "will", "with", "won", "would", "wouldn", "you",
    "your", "yours", "yourself", "yourselves",
    };
    return words;
}

} // namespace llr::textprep
